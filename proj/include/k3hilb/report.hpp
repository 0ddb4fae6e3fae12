#pragma once

// Per-t reports, range scans and their text / JSON / CSV renderings.
//
// JSON schema (every integer is a decimal string):
//   { "t": "10",
//     "cone":  { "ray1": [x, y], "ray2": [x, y], "case": "square|pell_4t_5|pell_t_1",
//                "inequality": "y>0, 19y<60x" },
//     "group": { "finite": bool, "generator": [A, B] | null },
//     "aut":   { "tag": "trivial|natural_involution|non_natural_involution", "reason": str,
//                "kind": "non-symplectic" | null, "matrix": [[A, B], [C, D]] | null,
//                "D": [x, y] | null, "pell_m1": [a, b] | null, "pell_p1": [A, -B] | null },
//     "chi":   [ { "n": "1", "chi": "6" }, ... ],
//     "verified": bool | null }

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "k3hilb/ample_cone.hpp"
#include "k3hilb/classifier.hpp"
#include "k3hilb/error.hpp"
#include "k3hilb/integer.hpp"
#include "k3hilb/ns_lattice.hpp"
#include "k3hilb/oracle.hpp"
#include "k3hilb/pell.hpp"

namespace k3hilb::report {

using Pair = std::pair<BigInt, BigInt>;

enum class Format { Text, Json, Csv };

struct ChiEntry {
  BigInt n;
  BigInt chi;
  bool operator==(const ChiEntry&) const = default;
};

struct Report {
  std::int64_t t = 0;

  NSClass ray1;
  NSClass ray2;
  ConeCaseTag cone_case = ConeCaseTag::SquareT;
  std::string inequality;

  bool group_finite = true;
  std::optional<Pair> generator;

  AutTag aut_tag = AutTag::Trivial;
  std::string reason;
  std::optional<std::string> kind;
  std::optional<std::array<BigInt, 4>> matrix;
  std::optional<NSClass> D;
  std::optional<Pair> pell_m1;
  std::optional<Pair> pell_p1;

  std::vector<ChiEntry> chi;  // n = 1..4, present only with a square-2 class D
  std::optional<bool> verified;

  bool operator==(const Report&) const = default;
};

/// Largest search range the oracles are allowed in a verification pass.
inline constexpr std::uint64_t kVerifySearchCap = 2'000'000;

/// Cross-checks the fast paths for one t against the oracles. Exhaustive
/// search is used whenever the relevant range is below kVerifySearchCap;
/// beyond that the cyclic method stands in for the unit search.
inline bool verify(std::int64_t t) {
  const auto aut = classify(t);
  if (t >= 2 && !is_perfect_square(t)) {
    const auto p1 = pell::minimal_solution_p1(t);
    const auto m1 = pell::minimal_solution_pm1(t);
    if (p1.y <= kVerifySearchCap) {
      const auto y_max = static_cast<std::uint64_t>(p1.y);
      if (oracle::brute_minimal(t, 1, y_max) != p1) return false;
      if (oracle::brute_minimal(t, -1, y_max) != m1) return false;
    } else {
      const auto ck = oracle::chakravala(t);
      if (ck.plus_one != p1 || ck.minus_one != m1) return false;
    }

    const BigInt bound = pell::nagell_bound(4 * t, 5);
    if (bound <= kVerifySearchCap) {
      const bool brute = !oracle::brute_pell(4 * t, 5, static_cast<std::uint64_t>(bound)).empty();
      if (brute != pell::solvable_general(4 * t, 5)) return false;
    }
  }

  const std::uint64_t coord_cap = 100'000;
  const auto found = oracle::brute_square2_ample(t, coord_cap);
  if (aut.tag == AutTag::NonNaturalInvolution) {
    const auto& D = aut.involution->D;
    if (D.x <= coord_cap && D.y <= coord_cap) return found == std::vector<NSClass>{D};
    return found.empty() && bbf_square(LatticeContext(t), D) == 2 && is_ample(t, D);
  }
  return found.empty();
}

inline Report make_report(std::int64_t t, bool run_verify = false) {
  const LatticeContext ctx(t);
  Report r;
  r.t = t;

  const auto cone = compute_cone(t);
  r.ray1 = cone.cone.ray1;
  r.ray2 = cone.cone.ray2;
  r.cone_case = cone.kase.tag;
  r.inequality = inequality(cone.cone);

  const auto group = group_structure(ctx);
  r.group_finite = group.structure == GroupStructure::FiniteDihedral4;
  r.generator = group.generator;

  const auto aut = classify(t);
  r.aut_tag = aut.tag;
  r.reason = aut.reason;
  if (aut.involution) {
    const auto& inv = *aut.involution;
    r.kind = std::string(AutClassification::kInvolutionKind);
    r.matrix = std::array<BigInt, 4>{inv.matrix.a(), inv.matrix.b(), inv.matrix.c(), inv.matrix.d()};
    r.D = inv.D;
    r.pell_m1 = Pair{inv.pell_m1.x, inv.pell_m1.y};
    r.pell_p1 = Pair{inv.pell_p1.x, inv.pell_p1.y};
    for (int n = 1; n <= 4; ++n) {
      const auto e = euler_characteristic(n);
      r.chi.push_back({e.n, e.chi});
    }
  }
  if (run_verify) r.verified = verify(t);
  return r;
}

// ---------------------------------------------------------------- JSON

namespace detail {

using nlohmann::json;

inline json pair_json(const BigInt& a, const BigInt& b) { return json::array({to_decimal(a), to_decimal(b)}); }

inline Pair pair_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a pair of decimal strings");
  return {from_decimal(j.at(0).get<std::string>()), from_decimal(j.at(1).get<std::string>())};
}

inline NSClass class_from(const json& j) {
  auto [x, y] = pair_from(j);
  return {std::move(x), std::move(y)};
}

template <class T, class F>
json optional_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : json(nullptr);
}

inline ConeCaseTag cone_case_from(const std::string& s) {
  for (auto tag : {ConeCaseTag::SquareT, ConeCaseTag::PellFourT5, ConeCaseTag::PellT1}) {
    if (to_string(tag) == s) return tag;
  }
  throw std::invalid_argument("unknown cone case '" + s + "'");
}

inline AutTag aut_tag_from(const std::string& s) {
  for (auto tag : {AutTag::Trivial, AutTag::NaturalInvolution, AutTag::NonNaturalInvolution}) {
    if (to_string(tag) == s) return tag;
  }
  throw std::invalid_argument("unknown automorphism tag '" + s + "'");
}

}  // namespace detail

inline nlohmann::json to_json(const Report& r) {
  using detail::json;
  json cone = {{"ray1", detail::pair_json(r.ray1.x, r.ray1.y)},
               {"ray2", detail::pair_json(r.ray2.x, r.ray2.y)},
               {"case", std::string(to_string(r.cone_case))},
               {"inequality", r.inequality}};
  json group = {{"finite", r.group_finite},
                {"generator", detail::optional_json(r.generator, [](const Pair& p) {
                   return detail::pair_json(p.first, p.second);
                 })}};
  json aut = {
      {"tag", std::string(to_string(r.aut_tag))},
      {"reason", r.reason},
      {"kind", detail::optional_json(r.kind, [](const std::string& s) { return json(s); })},
      {"matrix", detail::optional_json(r.matrix,
                                       [](const std::array<BigInt, 4>& m) {
                                         return json::array({detail::pair_json(m[0], m[1]),
                                                             detail::pair_json(m[2], m[3])});
                                       })},
      {"D", detail::optional_json(r.D, [](const NSClass& c) { return detail::pair_json(c.x, c.y); })},
      {"pell_m1", detail::optional_json(r.pell_m1, [](const Pair& p) { return detail::pair_json(p.first, p.second); })},
      {"pell_p1", detail::optional_json(r.pell_p1, [](const Pair& p) { return detail::pair_json(p.first, p.second); })},
  };
  json chi = json::array();
  for (const auto& e : r.chi) chi.push_back({{"n", to_decimal(e.n)}, {"chi", to_decimal(e.chi)}});

  return {{"t", std::to_string(r.t)},
          {"cone", std::move(cone)},
          {"group", std::move(group)},
          {"aut", std::move(aut)},
          {"chi", std::move(chi)},
          {"verified", r.verified ? json(*r.verified) : json(nullptr)}};
}

inline Report from_json(const nlohmann::json& j) {
  Report r;
  r.t = static_cast<std::int64_t>(from_decimal(j.at("t").get<std::string>()));

  const auto& cone = j.at("cone");
  r.ray1 = detail::class_from(cone.at("ray1"));
  r.ray2 = detail::class_from(cone.at("ray2"));
  r.cone_case = detail::cone_case_from(cone.at("case").get<std::string>());
  r.inequality = cone.at("inequality").get<std::string>();

  const auto& group = j.at("group");
  r.group_finite = group.at("finite").get<bool>();
  if (!group.at("generator").is_null()) r.generator = detail::pair_from(group.at("generator"));

  const auto& aut = j.at("aut");
  r.aut_tag = detail::aut_tag_from(aut.at("tag").get<std::string>());
  r.reason = aut.at("reason").get<std::string>();
  if (!aut.at("kind").is_null()) r.kind = aut.at("kind").get<std::string>();
  if (!aut.at("matrix").is_null()) {
    const auto top = detail::pair_from(aut.at("matrix").at(0));
    const auto bottom = detail::pair_from(aut.at("matrix").at(1));
    r.matrix = std::array<BigInt, 4>{top.first, top.second, bottom.first, bottom.second};
  }
  if (!aut.at("D").is_null()) r.D = detail::class_from(aut.at("D"));
  if (!aut.at("pell_m1").is_null()) r.pell_m1 = detail::pair_from(aut.at("pell_m1"));
  if (!aut.at("pell_p1").is_null()) r.pell_p1 = detail::pair_from(aut.at("pell_p1"));

  for (const auto& e : j.at("chi")) {
    r.chi.push_back({from_decimal(e.at("n").get<std::string>()), from_decimal(e.at("chi").get<std::string>())});
  }
  if (!j.at("verified").is_null()) r.verified = j.at("verified").get<bool>();
  return r;
}

// ---------------------------------------------------------------- text / CSV

namespace detail {

inline std::string pair_text(const BigInt& a, const BigInt& b) {
  std::ostringstream os;
  os << '(' << a << ", " << b << ')';
  return os.str();
}

inline std::string class_text(const NSClass& c) {
  std::ostringstream os;
  os << c.x << "h - " << c.y << "delta";
  return os.str();
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline std::string csv_pair(const std::optional<Pair>& p) {
  return p ? p->first.str() + "," + p->second.str() : ",";
}

}  // namespace detail

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "t = " << r.t << "  (H^2 = " << 2 * r.t << ")\n";
  os << "ample cone:  " << detail::class_text(r.ray1) << ", " << detail::class_text(r.ray2) << "  [" << to_string(r.cone_case)
     << "]\n";
  os << "             " << r.inequality << '\n';
  os << "O(NS):       ";
  if (r.group_finite) {
    os << "dihedral of order 4\n";
  } else {
    os << "generalized dihedral, rotation generator (A, B) = " << detail::pair_text(r.generator->first, r.generator->second)
       << '\n';
  }
  os << "Aut(S^[2]):  " << to_string(r.aut_tag) << " (" << r.reason << ")\n";
  if (r.matrix) {
    const auto& m = *r.matrix;
    os << "involution:  " << *r.kind << ", matrix [[" << m[0] << ", " << m[1] << "], [" << m[2] << ", " << m[3]
       << "]]\n";
    os << "D:           " << detail::class_text(*r.D) << "  (square 2)\n";
    os << "pell -1:     " << detail::pair_text(r.pell_m1->first, r.pell_m1->second) << '\n';
    os << "pell +1:     " << detail::pair_text(r.pell_p1->first, r.pell_p1->second) << '\n';
    os << "chi(nD):    ";
    for (const auto& e : r.chi) os << " n=" << e.n << ':' << e.chi;
    os << '\n';
  }
  if (r.verified) os << "verified:    " << (*r.verified ? "yes" : "NO") << '\n';
  return os.str();
}

inline std::string csv_header() {
  return "t,cone_case,ray2_x,ray2_y,inequality,group_finite,generator_A,generator_B,aut_tag,matrix,D_x,D_y,"
         "pell_m1_a,pell_m1_b,pell_p1_A,pell_p1_B,chi,verified\n";
}

inline std::string render_csv_row(const Report& r) {
  std::ostringstream os;
  os << r.t << ',' << to_string(r.cone_case) << ',' << r.ray2.x << ',' << r.ray2.y << ','
     << detail::csv_quote(r.inequality) << ',' << (r.group_finite ? "true" : "false") << ','
     << detail::csv_pair(r.generator) << ',' << to_string(r.aut_tag) << ',';
  if (r.matrix) {
    const auto& m = *r.matrix;
    os << detail::csv_quote(m[0].str() + "," + m[1].str() + "," + m[2].str() + "," + m[3].str());
  }
  os << ',' << (r.D ? r.D->x.str() + "," + r.D->y.str() : ",") << ',' << detail::csv_pair(r.pell_m1) << ','
     << detail::csv_pair(r.pell_p1) << ',';
  std::string chi;
  for (const auto& e : r.chi) chi += (chi.empty() ? "" : ",") + e.chi.str();
  if (!chi.empty()) os << detail::csv_quote(chi);
  os << ',' << (r.verified ? (*r.verified ? "true" : "false") : "") << '\n';
  return os.str();
}

inline std::string render(const Report& r, Format format) {
  switch (format) {
    case Format::Text: return render_text(r);
    case Format::Json: return to_json(r).dump() + "\n";
    case Format::Csv: return csv_header() + render_csv_row(r);
  }
  return {};
}

// ---------------------------------------------------------------- cone

inline std::string render_cone(std::int64_t t, Format format) {
  const auto result = compute_cone(t);
  const auto& c = result.cone;
  switch (format) {
    case Format::Text: {
      std::ostringstream os;
      os << "t = " << t << '\n'
         << "ray1: " << detail::class_text(c.ray1) << '\n'
         << "ray2: " << detail::class_text(c.ray2) << '\n'
         << "case: " << to_string(result.kase.tag) << '\n'
         << "cone: " << inequality(c) << '\n';
      return os.str();
    }
    case Format::Json: {
      nlohmann::json j = {{"t", std::to_string(t)},
                          {"ray1", detail::pair_json(c.ray1.x, c.ray1.y)},
                          {"ray2", detail::pair_json(c.ray2.x, c.ray2.y)},
                          {"case", std::string(to_string(result.kase.tag))},
                          {"inequality", inequality(c)}};
      return j.dump() + "\n";
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "t,ray1_x,ray1_y,ray2_x,ray2_y,case,inequality\n"
         << t << ',' << c.ray1.x << ',' << c.ray1.y << ',' << c.ray2.x << ',' << c.ray2.y << ','
         << to_string(result.kase.tag) << ',' << detail::csv_quote(inequality(c)) << '\n';
      return os.str();
    }
  }
  return {};
}

// ---------------------------------------------------------------- scan

struct ScanRow {
  std::int64_t t = 0;
  AutTag tag = AutTag::Trivial;
  ConeCaseTag cone_case = ConeCaseTag::SquareT;
  std::optional<NSClass> D;
  bool operator==(const ScanRow&) const = default;
};

inline ScanRow scan_row(std::int64_t t) {
  const auto aut = classify(t);
  ScanRow row{t, aut.tag, compute_cone(t).kase.tag, std::nullopt};
  if (aut.involution) row.D = aut.involution->D;
  return row;
}

/// Rows for t in [from, to], in order. Workers take strided slices of the
/// range and write into their own slots.
inline std::vector<ScanRow> scan(std::int64_t from, std::int64_t to, unsigned jobs = 1) {
  if (from < 1 || to < from) throw Error(ErrorKind::InvalidInput, "scan range must satisfy 1 <= from <= to");
  const auto count = static_cast<std::size_t>(to - from + 1);
  std::vector<ScanRow> rows(count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = scan_row(from + static_cast<std::int64_t>(i));
    return rows;
  }

  std::vector<std::exception_ptr> failures(jobs);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += jobs) rows[i] = scan_row(from + static_cast<std::int64_t>(i));
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return rows;
}

inline std::string render_scan(const std::vector<ScanRow>& rows, Format format, bool only_nontrivial) {
  std::ostringstream os;
  if (format == Format::Text) os << "t\taut\tcone_case\tD\n";
  if (format == Format::Csv) os << "t,aut,cone_case,D_x,D_y\n";
  for (const auto& row : rows) {
    if (only_nontrivial && row.tag == AutTag::Trivial) continue;
    switch (format) {
      case Format::Text:
        os << row.t << '\t' << to_string(row.tag) << '\t' << to_string(row.cone_case) << '\t'
           << (row.D ? detail::class_text(*row.D) : "-") << '\n';
        break;
      case Format::Json: {
        nlohmann::json j = {{"t", std::to_string(row.t)},
                            {"aut", std::string(to_string(row.tag))},
                            {"cone_case", std::string(to_string(row.cone_case))},
                            {"D", row.D ? detail::pair_json(row.D->x, row.D->y) : nlohmann::json(nullptr)}};
        os << j.dump() << '\n';
        break;
      }
      case Format::Csv:
        os << row.t << ',' << to_string(row.tag) << ',' << to_string(row.cone_case) << ','
           << (row.D ? row.D->x.str() + "," + row.D->y.str() : ",") << '\n';
        break;
    }
  }
  return os.str();
}

}  // namespace k3hilb::report
