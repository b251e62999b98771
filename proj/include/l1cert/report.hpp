#pragma once

#include "l1cert/lower.hpp"
#include "l1cert/matrix_gen.hpp"
#include "l1cert/recovery.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace l1cert {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kTableVersion = 1;

using Json = nlohmann::ordered_json;

// Finite values as numbers, infinity as the string "inf".
Json beta_json(const Beta& beta);

// The corrector matrix itself is not embedded; pass the file it was written to.
Json certificate_json(const GoodnessCertificate& cert, const std::optional<std::string>& witness_file = {});
Json kernel_witness_json(const KernelWitness& w);
Json recovery_json(const RecoveryResult& r);
Json upper_bound_json(const UpperBoundResult& r);
Json gen_spec_json(const GenSpec& spec);

struct TableRow {
  Index m = 0;
  Index s_mu = 0;
  Index s_alpha1 = 0;
  std::optional<Index> s_alphas;
  std::optional<Index> s_bar;
  double cpu_seconds = 0.0;
};

// Versioned comment line, then "m,s_mu,s_alpha1[,s_alphas],s_bar,cpu_seconds".
// A missing value prints as "NA".
std::string table_csv(const std::vector<TableRow>& rows, bool full, const std::string& provenance);

}  // namespace l1cert
