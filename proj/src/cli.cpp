#include "l1cert/cli.hpp"

#include "l1cert/bounds.hpp"
#include "l1cert/errors.hpp"
#include "l1cert/lower.hpp"
#include "l1cert/matrix_gen.hpp"
#include "l1cert/oracle.hpp"
#include "l1cert/parallel.hpp"
#include "l1cert/recovery.hpp"
#include "l1cert/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace l1cert {

namespace {

struct Common {
  std::size_t lp_limit = 200000;
  std::size_t oracle_limit = 200000;
  int threads = 0;
};

class Stopwatch {
 public:
  double wall() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }
  double cpu() const { return static_cast<double>(std::clock() - cpu_start_) / CLOCKS_PER_SEC; }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::clock_t cpu_start_ = std::clock();
};

Beta parse_beta(const std::string& text) {
  if (text == "inf" || text == "infinity") return Beta::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) throw ArgumentError("beta must be a number or 'inf', got '" + text + "'");
  return Beta(v);
}

Alpha1Form parse_form(const std::string& text) {
  if (text == "auto") return Alpha1Form::Auto;
  if (text == "range") return Alpha1Form::Range;
  if (text == "kernel") return Alpha1Form::Kernel;
  throw ArgumentError("unknown form '" + text + "' (expected auto, range or kernel)");
}

// "0.1..0.9" expands with step 0.1; items may be mixed with plain values.
std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !(v > 0.0 && v <= 1.0)) {
      throw ArgumentError("fractions must lie in (0, 1], got '" + s + "'");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    const double lo = number(item.substr(0, dots));
    const double hi = number(item.substr(dots + 2));
    if (hi < lo) throw ArgumentError("empty fraction range '" + item + "'");
    for (int i = 0; lo + 0.1 * i <= hi + 1e-9; ++i) out.push_back(lo + 0.1 * i);
  }
  if (out.empty()) throw ArgumentError("no fractions given");
  return out;
}

std::string joined_command(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

Json matrix_json(const std::string& path, const SensingMatrix& a) {
  Json j;
  j["path"] = path;
  j["k"] = a.rows();
  j["n"] = a.cols();
  std::ifstream sidecar(path + ".json");
  if (sidecar) {
    try {
      const Json meta = Json::parse(sidecar);
      if (meta.contains("seed")) j["seed"] = meta["seed"];
      if (meta.contains("family")) j["family"] = meta["family"];
    } catch (const Json::exception&) {
      // An unreadable sidecar only loses the provenance fields.
    }
  }
  return j;
}

Json header(const std::string& command, const std::string& invocation) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["invocation"] = invocation;
  return j;
}

BoundOptions bound_options(const Common& common, const std::string& form = "auto") {
  BoundOptions o;
  o.lp_limit = common.lp_limit;
  o.alpha1_form = parse_form(form);
  return o;
}

void write_witness(const std::optional<std::string>& path, const GoodnessCertificate& cert) {
  if (path && cert.corrector) write_matrix_file(*path, cert.corrector->y);
}

TableRow table_row(const GenSpec& spec, bool full, bool upper, const Common& common, std::ostream& err) {
  const Stopwatch clock;
  const SensingMatrix a = generate(spec);
  TableRow row;
  row.m = spec.k;
  row.s_mu = s_bound_mu(a).s_certified;
  const BoundOptions opts = bound_options(common);
  row.s_alpha1 = s_bound_alpha1(a, {}, ObservationNorm::L2, opts).s_certified;
  Index lower = row.s_alpha1;
  if (full) {
    try {
      row.s_alphas = s_bound_alphas(a, {}, ObservationNorm::L2, opts).s_certified;
    } catch (const PartialCertificateError& e) {
      row.s_alphas = e.best().s_certified;
      err << "warning: m=" << spec.k << ": " << e.what() << "; s_alphas is a partial result\n";
    }
    lower = *row.s_alphas;
  }
  if (upper) {
    SCAConfig cfg;
    cfg.seed = spec.seed;
    row.s_bar = s_upper_bound(a, cfg, lower + 1).s_bar;
  }
  row.cpu_seconds = clock.cpu();
  return row;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verifiable bounds on the sparsity level recoverable by l1 minimization", "l1cert"};
  app.fallthrough();
  app.require_subcommand(1);
  Common common;
  app.add_option("--lp-limit", common.lp_limit, "Largest alpha_s program (constraint nonzeros)")
      ->check(CLI::PositiveNumber);
  app.add_option("--oracle-limit", common.oracle_limit, "Largest exact-oracle enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", common.threads, "Worker threads (default: L1CERT_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string matrix_path;
  std::string norm_name = "l2";
  std::string beta_text = "inf";
  std::string form = "auto";
  std::optional<std::string> witness_path;

  auto* gen = app.add_subcommand("gen", "Generate a sensing matrix");
  std::string family_name;
  GenSpec spec;
  std::string out_path;
  gen->add_option("--family", family_name, "gaussian, fourier, hadamard or conv")->required();
  gen->add_option("--k", spec.k, "Rows (fixed for conv)");
  gen->add_option("--n", spec.n, "Columns (fixed for conv)");
  gen->add_option("--seed", spec.seed, "RNG seed");
  gen->add_flag("--normalize,!--no-normalize", spec.normalize, "Unit l2-norm columns (default on)");
  gen->add_option("--out", out_path, "Matrix file to write")->required();

  auto* mu = app.add_subcommand("mu", "Mutual incoherence and the bound s[mu]");
  mu->add_option("matrix", matrix_path)->required()->check(CLI::ExistingFile);
  mu->add_option("--norm", norm_name, "Observation norm for the beta context");

  auto add_alpha_options = [&](CLI::App* sub) {
    sub->add_option("matrix", matrix_path)->required()->check(CLI::ExistingFile);
    sub->add_option("--beta", beta_text, "Bound on ||y_i||_* (number or inf)");
    sub->add_option("--norm", norm_name, "Observation norm: l1, l2 or linf");
    sub->add_option("--witness", witness_path, "Write the corrector Y to this matrix file");
  };

  auto* alpha1 = app.add_subcommand("alpha1", "alpha_1 with the improved column bound");
  add_alpha_options(alpha1);
  alpha1->add_option("--form", form, "LP form: auto, range or kernel");

  auto* alphas = app.add_subcommand("alphas", "alpha_s for one s");
  add_alpha_options(alphas);
  Index s_value = 0;
  alphas->add_option("--s", s_value, "Sparsity level")->required();

  auto* certify = app.add_subcommand("certify", "Lower bounds s[mu], s[alpha_1] and optionally s[alpha_s]");
  add_alpha_options(certify);
  bool full = false;
  certify->add_flag("--full", full, "Also run the full alpha_s search");

  auto* disprove = app.add_subcommand("disprove", "SCA lower bounds on gammahat_s and the upper bound s_bar");
  disprove->add_option("matrix", matrix_path)->required()->check(CLI::ExistingFile);
  SCAConfig sca;
  Index s_start = 1;
  disprove->add_option("--s-start", s_start, "First s to test");
  disprove->add_option("--restarts", sca.restarts, "Random restarts per s (0: automatic)");
  disprove->add_option("--seed", sca.seed, "RNG seed");
  disprove->add_option("--max-iters", sca.max_iters, "Iterations per restart");

  auto* recover = app.add_subcommand("recover", "l1 recovery from observations");
  recover->add_option("matrix", matrix_path)->required()->check(CLI::ExistingFile);
  std::string y_path;
  double eps = 0.0;
  std::optional<std::string> x_path;
  recover->add_option("--y", y_path, "Observation vector file")->required()->check(CLI::ExistingFile);
  recover->add_option("--eps", eps, "Noise level epsilon");
  recover->add_option("--norm", norm_name, "Observation norm: l1, l2 or linf");
  recover->add_option("--out", x_path, "Write the recovered vector to this file");

  auto* oracle = app.add_subcommand("oracle", "Exact gammahat_s by enumeration (small instances)");
  oracle->add_option("matrix", matrix_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--s", s_value, "Sparsity level")->required();

  auto* table = app.add_subcommand("table", "Bound table over row fractions m = floor(f n)");
  std::string fractions = "0.1..0.9";
  bool no_upper = false;
  table->add_option("--family", family_name, "gaussian, fourier or hadamard")->required();
  table->add_option("--n", spec.n, "Columns")->required();
  table->add_option("--fractions", fractions, "Comma list; a..b steps by 0.1");
  table->add_option("--seed", spec.seed, "RNG seed");
  table->add_flag("--full", full, "Include s[alpha_s]");
  table->add_flag("--no-upper", no_upper, "Skip the SCA upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: argument: " << e.what() << "\n";
    return kExitArgument;
  }

  const std::string invocation = joined_command(argc, argv);
  try {
    if (common.threads > 0) set_threads(common.threads);
    const ObservationNorm norm = parse_norm(norm_name);
    const Beta beta = parse_beta(beta_text);

    if (gen->parsed()) {
      spec.family = parse_family(family_name);
      const SensingMatrix a = generate(spec);
      write_matrix_file(out_path, a.entries());
      GenSpec shown = spec;
      shown.k = a.rows();
      shown.n = a.cols();
      const Json meta = gen_spec_json(shown);
      std::ofstream(out_path + ".json") << meta.dump(2) << "\n";
      Json j = header("gen", invocation);
      j["matrix"] = out_path;
      j["sidecar"] = out_path + ".json";
      j["spec"] = meta;
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (table->parsed()) {
      spec.family = parse_family(family_name);
      if (spec.family == Family::Convolution) throw ArgumentError("table does not take the conv family");
      std::vector<TableRow> rows;
      for (const double f : parse_fractions(fractions)) {
        GenSpec row_spec = spec;
        row_spec.k = static_cast<Index>(std::floor(f * static_cast<double>(spec.n) + 1e-9));
        if (row_spec.k < 1) throw ArgumentError("fraction " + std::to_string(f) + " gives m = 0");
        rows.push_back(table_row(row_spec, full, !no_upper, common, err));
      }
      std::ostringstream prov;
      prov << "family=" << family_name << " n=" << spec.n << " seed=" << spec.seed << " command=\"" << invocation
           << "\"";
      out << table_csv(rows, full, prov.str());
      return kExitOk;
    }

    const SensingMatrix a = read_matrix_file(matrix_path);
    Json j;

    if (mu->parsed()) {
      const GoodnessCertificate c = s_bound_mu(a, norm);
      j = header("mu", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      j["mu"] = mutual_incoherence(a);
      j["certificate"] = certificate_json(c);
    } else if (alpha1->parsed()) {
      const GoodnessCertificate c = s_bound_alpha1(a, beta, norm, bound_options(common, form));
      write_witness(witness_path, c);
      j = header("alpha1", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      j["alpha1"] = corrector_value(a, c.corrector->y, 1);
      j["s_improved"] = c.s_certified;
      j["certificate"] = certificate_json(c, witness_path);
    } else if (alphas->parsed()) {
      const AlphaResult r = compute_alphas(a, s_value, beta, norm, bound_options(common));
      if (witness_path) write_matrix_file(*witness_path, r.corrector.y);
      j = header("alphas", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      j["s"] = s_value;
      j["alphas"] = r.value;
      j["beta"] = beta_json(beta);
      j["norm"] = to_string(norm);
      j["certifies"] = r.value < 0.5;
      if (witness_path) j["witness_file"] = *witness_path;
    } else if (certify->parsed()) {
      j = header("certify", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      Stopwatch clock;
      const GoodnessCertificate cm = s_bound_mu(a, norm);
      j["s_mu"] = {{"s", cm.s_certified}, {"mu", mutual_incoherence(a)}, {"seconds", clock.wall()}};
      clock = Stopwatch();
      const BoundOptions opts = bound_options(common);
      const GoodnessCertificate c1 = s_bound_alpha1(a, beta, norm, opts);
      j["s_alpha1"] = {{"s", c1.s_certified},
                       {"alpha1", corrector_value(a, c1.corrector->y, 1)},
                       {"seconds", clock.wall()},
                       {"certificate", certificate_json(c1, full ? std::nullopt : witness_path)}};
      if (!full) write_witness(witness_path, c1);
      if (full) {
        clock = Stopwatch();
        int code = kExitOk;
        GoodnessCertificate cs;
        try {
          cs = s_bound_alphas(a, beta, norm, opts);
        } catch (const PartialCertificateError& e) {
          cs = e.best();
          j["guard"] = e.what();
          code = kExitResource;
        }
        write_witness(witness_path, cs);
        j["s_alphas"] = {{"s", cs.s_certified},
                         {"seconds", clock.wall()},
                         {"complete", code == kExitOk},
                         {"certificate", certificate_json(cs, witness_path)}};
        out << j.dump(2) << "\n";
        if (code != kExitOk) err << "error: resource: " << j["guard"].get<std::string>() << "\n";
        return code;
      }
    } else if (disprove->parsed()) {
      const UpperBoundResult r = s_upper_bound(a, sca, s_start);
      j = header("disprove", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      j["seed"] = sca.seed;
      j["restarts"] = effective_restarts(sca, a.cols());
      j["result"] = upper_bound_json(r);
    } else if (recover->parsed()) {
      const Vector y = read_vector_file(y_path);
      const RecoveryResult r = l1_recover(a, y, eps, norm);
      if (x_path && r.feasible) write_vector_file(*x_path, r.x);
      j = header("recover", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      j["epsilon"] = eps;
      j["norm"] = to_string(norm);
      j["result"] = recovery_json(r);
    } else if (oracle->parsed()) {
      OracleOptions opts;
      opts.size_guard = common.oracle_limit;
      j = header("oracle", invocation);
      j["matrix"] = matrix_json(matrix_path, a);
      j["s"] = s_value;
      j["gammahat"] = gammahat_exact(a, s_value, opts);
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  } catch (const ArgumentError& e) {
    err << "error: argument: " << e.what() << "\n";
    return kExitArgument;
  } catch (const ResourceError& e) {
    err << "error: resource: " << e.what() << "\n";
    return kExitResource;
  } catch (const SolverError& e) {
    err << "error: solver: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: io: " << e.what() << "\n";
    return kExitArgument;
  }
}

}  // namespace l1cert
