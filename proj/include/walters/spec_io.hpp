#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "walters/potential.hpp"

namespace walters {

struct LoadedPotential {
  WaltersPotential potential;
  std::string name;
  /// How incomplete input was read (e.g. a sequence without a tail model).
  std::vector<std::string> notes;
};

nlohmann::json sequence_to_json(const SequenceSpec& s);
SequenceSpec sequence_from_json(const nlohmann::json& j, int start_index,
                                std::vector<std::string>* notes = nullptr,
                                const std::string& name = "");

nlohmann::json potential_to_json(const WaltersPotential& f);
LoadedPotential potential_from_json(const nlohmann::json& j, const std::string& name = "spec");
LoadedPotential load_potential_file(const std::string& path);

/// The named instances: zero, constant:K, example1[:B1], thm2, thm2-mirror, symmetric.
LoadedPotential builtin_potential(const std::string& name);
std::vector<std::string> builtin_names();

/// a_p = -4 (1/2)^p, c_p = -9 (1/3)^p, b_p = a_2+...+a_p, d_p = c_2+...+c_p, b_1 = d_1 = b1.
WaltersPotential example1_potential(double b1 = -1.0);
/// a_2 = -10, a_j = -2^{2-j} (j >= 3), c_j = -2^{2-j}, b = d = -1.
WaltersPotential thm2_potential();
/// a_j = c_j = -2^{2-j}, b = d = -1.
WaltersPotential symmetric_potential();
WaltersPotential constant_potential(double kappa);

}  // namespace walters
