#pragma once

#include <fstream>
#include <map>

#include "symspace/root_system.hpp"

namespace symspace {

/// Keys shipped with the tool.  OH16 exists as a nilpotent model only.
inline const std::vector<std::string>& catalog_keys() {
  static const std::vector<std::string> keys = {"H2",  "H3",  "H4",   "H5",    "CH4",  "CH6",
                                                "HH8", "OH16", "SL3", "SL4", "H2xH2", "H3xSL3"};
  return keys;
}

inline bool catalog_has_algebra(const std::string& key) { return key != "OH16"; }

/// Builder expressions: "so(3)", "su(2)", "sp(2)", "sl(4)" and "+"-sums,
/// e.g. "so(3)+sl(3)".  Whitespace is ignored.
inline LieAlgebraData parse_space_expr(const std::string& expr) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::optional<LieAlgebraData> acc;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t plus = s.find('+', pos);
    const std::string term = s.substr(pos, plus == std::string::npos ? plus : plus - pos);
    const std::size_t lp = term.find('('), rp = term.find(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp + 2)
      throw std::invalid_argument("bad space expression: " + expr);
    const std::string fam = term.substr(0, lp);
    const int n = std::stoi(term.substr(lp + 1, rp - lp - 1));
    LieAlgebraData g = fam == "so"   ? build_so(n)
                       : fam == "su" ? build_su(n)
                       : fam == "sp" ? build_sp(n)
                       : fam == "sl" ? build_sl(n)
                                     : throw std::invalid_argument("unknown family: " + fam);
    acc = acc ? direct_sum(*acc, g) : g;
    pos = plus == std::string::npos ? s.size() : plus + 1;
  }
  if (!acc) throw std::invalid_argument("empty space expression");
  return *acc;
}

/// User catalog: text config with one "KEY = expr" per line ('#' comments).
inline std::map<std::string, std::string>& user_catalog() {
  static std::map<std::string, std::string> entries;
  return entries;
}

inline void load_catalog_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read catalog file: " + path);
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string v) {
      const auto a = v.find_first_not_of(" \t\r");
      const auto b = v.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq)), expr = trim(line.substr(eq + 1));
    if (!key.empty() && !expr.empty()) user_catalog()[key] = expr;
  }
}

inline LieAlgebraData make_space(const std::string& key) {
  if (key == "H2") return build_so(2);
  if (key == "H3") return build_so(3);
  if (key == "H4") return build_so(4);
  if (key == "H5") return build_so(5);
  if (key == "CH4") return build_su(2);
  if (key == "CH6") return build_su(3);
  if (key == "HH8") return build_sp(2);
  if (key == "SL3") return build_sl(3);
  if (key == "SL4") return build_sl(4);
  if (key == "H2xH2") return direct_sum(build_so(2), build_so(2));
  if (key == "H3xSL3") return direct_sum(build_so(3), build_sl(3));
  if (key == "OH16")
    throw std::invalid_argument("OH16 ships as a nilpotent model only (no matrix algebra)");
  if (auto it = user_catalog().find(key); it != user_catalog().end())
    return parse_space_expr(it->second);
  if (key.find('(') != std::string::npos) return parse_space_expr(key);
  throw std::invalid_argument("unknown space key: " + key);
}

/// Nilpotent data for a catalog key or a division-model key (R3, C2, H2x...,
/// O2 written as letter + n).
inline NilpotentData make_nilpotent(const std::string& key) {
  if (key == "OH16") return build_division_algebra_nilpotent(DivisionKind::O, 2);
  if (key.size() >= 2 && (key[0] == 'R' || key[0] == 'C' || key[0] == 'O') &&
      std::isdigit(static_cast<unsigned char>(key[1]))) {
    const int n = std::stoi(key.substr(1));
    const DivisionKind k = key[0] == 'R'   ? DivisionKind::R
                           : key[0] == 'C' ? DivisionKind::C
                                           : DivisionKind::O;
    return build_division_algebra_nilpotent(k, n);
  }
  if (key.size() >= 2 && key[0] == 'Q' && std::isdigit(static_cast<unsigned char>(key[1])))
    return build_division_algebra_nilpotent(DivisionKind::H, std::stoi(key.substr(1)));
  return nilpotent_structure(restricted_roots(make_space(key)));
}

/// Spaces whose de Rham decomposition contains a real- or complex-hyperbolic
/// factor (the lambda_0 = 0 set of the catalog).
inline bool has_hyperbolic_factor(const std::string& key) {
  return key == "H2" || key == "H3" || key == "H4" || key == "H5" || key == "CH4" ||
         key == "CH6" || key == "H2xH2" || key == "H3xSL3";
}

}  // namespace symspace
