#include "l1cert/report.hpp"

#include <iomanip>
#include <sstream>

namespace l1cert {

Json beta_json(const Beta& beta) {
  if (beta.is_infinite()) return "inf";
  return beta.value();
}

Json kernel_witness_json(const KernelWitness& w) {
  Json j;
  j["s"] = w.u.s;
  j["support"] = w.u.support;
  j["signs"] = w.u.signs;
  j["value"] = w.value;
  j["residual"] = w.residual;
  j["x"] = std::vector<double>(w.x.data(), w.x.data() + w.x.size());
  return j;
}

Json certificate_json(const GoodnessCertificate& cert, const std::optional<std::string>& witness_file) {
  Json j;
  j["kind"] = to_string(cert.kind);
  j["s_certified"] = cert.s_certified;
  j["bound_value"] = cert.bound_value;
  j["beta"] = beta_json(cert.beta);
  j["norm"] = to_string(cert.norm);
  j["tolerances"] = {{"feas_tol", cert.tolerances.feas_tol}, {"gap_tol", cert.tolerances.gap_tol}};
  if (witness_file) j["witness_file"] = *witness_file;
  if (cert.kernel) j["kernel_witness"] = kernel_witness_json(*cert.kernel);
  return j;
}

Json recovery_json(const RecoveryResult& r) {
  Json j;
  j["feasible"] = r.feasible;
  if (!r.feasible) return j;
  j["l1_norm"] = r.l1_norm;
  j["lower_bound"] = r.lower_bound;
  j["residual"] = r.residual;
  j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  return j;
}

Json upper_bound_json(const UpperBoundResult& r) {
  Json j;
  j["s_bar"] = r.s_bar;
  j["disproved"] = r.disproved;
  Json runs = Json::array();
  for (const ScaResult& run : r.runs) {
    runs.push_back({{"s", run.witness.u.s},
                    {"lower_bound", run.value},
                    {"restarts", run.restarts},
                    {"seed", run.seed}});
  }
  j["runs"] = std::move(runs);
  if (r.disproved) j["witness"] = kernel_witness_json(r.runs.back().witness);
  return j;
}

Json gen_spec_json(const GenSpec& spec) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["family"] = to_string(spec.family);
  j["k"] = spec.k;
  j["n"] = spec.n;
  j["seed"] = spec.seed;
  j["normalize"] = spec.normalize;
  return j;
}

std::string table_csv(const std::vector<TableRow>& rows, bool full, const std::string& provenance) {
  std::ostringstream out;
  out << "# l1cert table v" << kTableVersion;
  if (!provenance.empty()) out << " " << provenance;
  out << "\n";
  out << "m,s_mu,s_alpha1";
  if (full) out << ",s_alphas";
  out << ",s_bar,cpu_seconds\n";
  auto opt = [](const std::optional<Index>& v) { return v ? std::to_string(*v) : std::string("NA"); };
  for (const TableRow& r : rows) {
    out << r.m << "," << r.s_mu << "," << r.s_alpha1;
    if (full) out << "," << opt(r.s_alphas);
    out << "," << opt(r.s_bar) << "," << std::fixed << std::setprecision(2) << r.cpu_seconds << "\n";
    out << std::defaultfloat;
  }
  return out.str();
}

}  // namespace l1cert
