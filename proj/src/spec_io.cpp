#include "walters/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "walters/errors.hpp"

namespace walters {

namespace {

constexpr const char* kModule = "potential";

using nlohmann::json;

double number_at(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw SpecError(kModule, where + ": missing numeric '" + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

json sequence_to_json(const SequenceSpec& s) {
  json out;
  out["start_index"] = s.start_index();
  out["prefix"] = std::vector<double>(s.prefix().begin(), s.prefix().end());
  std::visit(
      [&out](const auto& tail) {
        using T = std::decay_t<decltype(tail)>;
        if constexpr (std::is_same_v<T, ConstantTail>) {
          out["tail"] = {{"type", "constant"}, {"limit", tail.limit}};
        } else {
          out["tail"] = {{"type", "geometric"},
                         {"limit", tail.limit},
                         {"coeff", tail.coeff},
                         {"ratio", tail.ratio}};
        }
      },
      s.tail());
  return out;
}

SequenceSpec sequence_from_json(const json& j, int start_index, std::vector<std::string>* notes,
                                const std::string& name) {
  if (!j.is_object()) throw SpecError(kModule, "sequence '" + name + "' must be an object");
  if (j.contains("start_index")) {
    if (!j.at("start_index").is_number_integer() || j.at("start_index").get<int>() != start_index) {
      throw SpecError(kModule, "sequence '" + name + "' must start at n = " +
                                   std::to_string(start_index));
    }
  }
  std::vector<double> prefix;
  if (j.contains("prefix")) {
    if (!j.at("prefix").is_array()) throw SpecError(kModule, name + ": prefix must be an array");
    for (const auto& v : j.at("prefix")) {
      if (!v.is_number()) throw SpecError(kModule, name + ": prefix entries must be numbers");
      prefix.push_back(v.get<double>());
    }
  }
  if (!j.contains("tail")) {
    const double limit = number_at(j, "limit", name);
    if (notes) {
      notes->push_back(name + ": no tail given, constant tail at limit " + std::to_string(limit) +
                       " beyond the prefix");
    }
    return SequenceSpec(start_index, std::move(prefix), ConstantTail{limit});
  }
  const json& tail = j.at("tail");
  const std::string type = tail.value("type", "");
  const std::string where = name + ".tail";
  if (type == "constant") {
    return SequenceSpec(start_index, std::move(prefix), ConstantTail{number_at(tail, "limit", where)});
  }
  if (type == "geometric") {
    return SequenceSpec(start_index, std::move(prefix),
                        GeometricTail{number_at(tail, "limit", where), number_at(tail, "coeff", where),
                                      number_at(tail, "ratio", where)});
  }
  throw SpecError(kModule, where + ": type must be 'constant' or 'geometric'");
}

json potential_to_json(const WaltersPotential& f) {
  return {{"a", sequence_to_json(f.a_seq())},
          {"b", sequence_to_json(f.b_seq())},
          {"c", sequence_to_json(f.c_seq())},
          {"d", sequence_to_json(f.d_seq())}};
}

LoadedPotential potential_from_json(const json& j, const std::string& name) {
  if (!j.is_object()) throw SpecError(kModule, "potential spec must be a JSON object");
  std::vector<std::string> notes;
  auto seq = [&](const char* key, int start) {
    if (!j.contains(key)) throw SpecError(kModule, std::string("missing sequence '") + key + "'");
    return sequence_from_json(j.at(key), start, &notes, key);
  };
  WaltersPotential f(seq("a", 2), seq("b", 1), seq("c", 2), seq("d", 1));
  return {std::move(f), name, std::move(notes)};
}

LoadedPotential load_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(kModule, "cannot open spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SpecError(kModule, "spec file '" + path + "' is not valid JSON: " + e.what());
  }
  return potential_from_json(j, path);
}

WaltersPotential example1_potential(double b1) {
  return WaltersPotential(SequenceSpec(2, {}, GeometricTail{0.0, -4.0, 0.5}),
                          SequenceSpec(1, {b1}, GeometricTail{-2.0, 4.0, 0.5}),
                          SequenceSpec(2, {}, GeometricTail{0.0, -9.0, 1.0 / 3.0}),
                          SequenceSpec(1, {b1}, GeometricTail{-1.5, 4.5, 1.0 / 3.0}));
}

WaltersPotential thm2_potential() {
  return WaltersPotential(SequenceSpec(2, {-10.0}, GeometricTail{0.0, -4.0, 0.5}),
                          SequenceSpec::constant(1, -1.0),
                          SequenceSpec(2, {}, GeometricTail{0.0, -4.0, 0.5}),
                          SequenceSpec::constant(1, -1.0));
}

WaltersPotential symmetric_potential() {
  return WaltersPotential(SequenceSpec(2, {}, GeometricTail{0.0, -4.0, 0.5}),
                          SequenceSpec::constant(1, -1.0),
                          SequenceSpec(2, {}, GeometricTail{0.0, -4.0, 0.5}),
                          SequenceSpec::constant(1, -1.0));
}

WaltersPotential constant_potential(double kappa) {
  return WaltersPotential(SequenceSpec::constant(2, kappa), SequenceSpec::constant(1, kappa),
                          SequenceSpec::constant(2, kappa), SequenceSpec::constant(1, kappa));
}

namespace {

double parse_parameter(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  double v = 0.0;
  if (!(in >> v) || !in.eof()) throw SpecError(kModule, "bad parameter in builtin '" + name + "'");
  return v;
}

}  // namespace

LoadedPotential builtin_potential(const std::string& name) {
  const auto colon = name.find(':');
  const std::string base = name.substr(0, colon);
  const bool has_param = colon != std::string::npos;
  const std::string param = has_param ? name.substr(colon + 1) : "";

  if (base == "zero" && !has_param) return {constant_potential(0.0), name, {}};
  if (base == "constant" && has_param) {
    return {constant_potential(parse_parameter(param, name)), name, {}};
  }
  if (base == "example1") {
    const double b1 = has_param ? parse_parameter(param, name) : -1.0;
    std::vector<std::string> notes;
    if (!has_param) notes.push_back("example1: b_1 = d_1 = -1 (default)");
    return {example1_potential(b1), name, std::move(notes)};
  }
  if (base == "thm2" && !has_param) return {thm2_potential(), name, {}};
  if (base == "thm2-mirror" && !has_param) return {thm2_potential().mirrored(), name, {}};
  if (base == "symmetric" && !has_param) return {symmetric_potential(), name, {}};
  throw SpecError(kModule, "unknown builtin '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"zero", "constant:K", "example1[:B1]", "thm2", "thm2-mirror", "symmetric"};
}

}  // namespace walters
