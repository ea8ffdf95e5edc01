#pragma once

// Built-in models, addressed by name. Parameterized families use
// "family:a" or "family:a,b".

#include <optional>
#include <string>
#include <vector>

#include "sullivan/parser.hpp"

namespace sullivan {

struct LibraryEntry {
  std::string name;
  std::string description;
};

namespace detail {

inline std::vector<int> parse_parameters(const std::string& spec, const std::string& family) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string piece = spec.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      int v = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad parameter '" + piece + "' for library family " + family);
    }
    pos = comma + 1;
    if (comma == spec.size()) break;
  }
  return out;
}

inline SullivanModel from_text(const std::string& name, const std::string& text) {
  return parse_model(text, name);
}

}  // namespace detail

inline SullivanModel sphere_model(int n) {
  if (n < 2) throw UsageError("sphere:n needs n >= 2");
  const std::string name = "sphere:" + std::to_string(n);
  if (n % 2 != 0) return detail::from_text(name, "gen x " + std::to_string(n) + "\n");
  return detail::from_text(name, "gen x " + std::to_string(n) + "\ngen y " + std::to_string(2 * n - 1) +
                                     "\nd y = x^2\n");
}

inline SullivanModel cp_model(int n) {
  if (n < 1) throw UsageError("cp:n needs n >= 1");
  return detail::from_text("cp:" + std::to_string(n), "gen x 2\ngen y " + std::to_string(2 * n + 1) +
                                                          "\nd y = x^" + std::to_string(n + 1) + "\n");
}

/// CP^{l-1} x S^{2r+1}: Λ(u, x, y) with |u| = 2r+1, |x| = 2, dy = x^l.
inline SullivanModel cpl_sphere_model(int l, int r) {
  if (l < 2 || r < 1) throw UsageError("cpl-sphere:l,r needs l >= 2 and r >= 1");
  return detail::from_text("cpl-sphere:" + std::to_string(l) + "," + std::to_string(r),
                           "gen u " + std::to_string(2 * r + 1) + "\ngen x 2\ngen y " + std::to_string(2 * l - 1) +
                               "\nd y = x^" + std::to_string(l) + "\n");
}

inline const std::vector<std::pair<LibraryEntry, std::string>>& fixed_models() {
  static const std::vector<std::pair<LibraryEntry, std::string>> models = {
      {{"example-5gen", "coformal model on x1, x2 (degree 2) and y1, y2, y3 (degree 3)"},
       "gen x1 2\ngen x2 2\ngen y1 3\ngen y2 3\ngen y3 3\n"
       "d y1 = x1^2\nd y2 = x1*x2\nd y3 = x2^2\n"},
      {{"heisenberg", "3-dimensional Heisenberg nilmanifold"},
       "flag non-simply-connected\ngen a 1\ngen b 1\ngen c 1\nd c = a*b\n"},
      {{"heisenberg5", "5-dimensional Heisenberg nilmanifold"},
       "flag non-simply-connected\ngen e1 1\ngen e2 1\ngen e3 1\ngen e4 1\ngen e5 1\n"
       "d e5 = e1*e2 + e3*e4\n"},
      {{"filiform5", "5-dimensional filiform nilmanifold"},
       "flag non-simply-connected\ngen e1 1\ngen e2 1\ngen e3 1\ngen e4 1\ngen e5 1\n"
       "d e3 = e1*e2\nd e4 = e1*e3\nd e5 = e1*e4\n"},
      {{"mixed-1", "lengths 2 and 3 on one even generator"},
       "gen x 2\ngen y1 3\ngen y2 5\nd y1 = x^2\nd y2 = x^3\n"},
      {{"mixed-2", "lengths 2 and 3 on two even generators"},
       "gen x1 2\ngen x2 2\ngen y1 3\ngen y2 5\nd y1 = x1^2\nd y2 = x2^3 + x1*x2^2\n"},
      {{"mixed-3", "lengths 2 and 3 with a degree-4 even generator"},
       "gen x1 2\ngen x2 4\ngen y1 3\ngen y2 5\ngen y3 7\n"
       "d y1 = x1^2\nd y2 = x1*x2 + x1^3\nd y3 = x2^2\n"},
      {{"mixed-4", "lengths 2 and 3 with an extra odd generator"},
       "gen x1 2\ngen x2 2\ngen y1 3\ngen y2 3\ngen y3 5\n"
       "d y1 = x1^2\nd y2 = x2^2\nd y3 = x1*x2^2\n"},
      {{"mixed-l3", "lengths 3 and 4 on one even generator"},
       "gen x 2\ngen y1 5\ngen y2 7\nd y1 = x^3\nd y2 = x^4\n"},
      {{"wang-negative", "odd first generator with a two-term Wang derivation"},
       "gen u 3\ngen a 3\ngen b 3\ngen c 5\ngen e 5\nd c = u*a\nd e = u*b\n"},
  };
  return models;
}

inline std::vector<LibraryEntry> library_listing() {
  std::vector<LibraryEntry> out = {
      {"sphere:n", "S^n; Λ(x) for odd n, Λ(x, y) with dy = x^2 for even n"},
      {"cp:n", "CP^n; Λ(x, y) with |x| = 2, dy = x^(n+1)"},
      {"cpl-sphere:l,r", "CP^(l-1) x S^(2r+1); Λ(u, x, y) with dy = x^l"},
  };
  for (const auto& [entry, text] : fixed_models()) out.push_back(entry);
  return out;
}

inline std::optional<SullivanModel> find_library_model(const std::string& name) {
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string family = name.substr(0, colon);
    const auto params = detail::parse_parameters(name.substr(colon + 1), family);
    if (family == "sphere" && params.size() == 1) return sphere_model(params[0]);
    if (family == "cp" && params.size() == 1) return cp_model(params[0]);
    if (family == "cpl-sphere" && params.size() == 2) return cpl_sphere_model(params[0], params[1]);
    if (family == "sphere" || family == "cp" || family == "cpl-sphere")
      throw UsageError("wrong number of parameters for library family " + family);
    return std::nullopt;
  }
  for (const auto& [entry, text] : fixed_models())
    if (entry.name == name) return detail::from_text(entry.name, text);
  return std::nullopt;
}

inline SullivanModel library_model(const std::string& name) {
  auto m = find_library_model(name);
  if (!m) throw UsageError("unknown library model '" + name + "'");
  return *m;
}

/// Concrete instances covering every family, small enough for full sweeps.
inline std::vector<SullivanModel> library_instances() {
  std::vector<SullivanModel> out;
  for (int n = 2; n <= 7; ++n) out.push_back(sphere_model(n));
  for (int n = 1; n <= 6; ++n) out.push_back(cp_model(n));
  for (int l = 2; l <= 6; ++l)
    for (int r = 1; r <= 3; ++r) out.push_back(cpl_sphere_model(l, r));
  for (const auto& [entry, text] : fixed_models()) out.push_back(detail::from_text(entry.name, text));
  return out;
}

}  // namespace sullivan
