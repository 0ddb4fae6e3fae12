// k3hilb: ample cones and automorphisms of Hilbert squares of generic K3 surfaces.
//
//   k3hilb classify --t 10 [--verify] [--format text|json|csv]
//   k3hilb cone     --t 10 [--format ...]
//   k3hilb pell     --d 10 --n -1 [--all-up-to k] [--brute Y] [--verify] [--format ...]
//   k3hilb scan     --from 2 --to 500 [--only-nontrivial] [--jobs J] [--format ...]
//
// Exit codes: 0 success, 2 usage or domain error, 3 verification mismatch.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3hilb/k3hilb.hpp"

namespace {

using namespace k3hilb;

constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;
constexpr std::int64_t kMaxT = 1'000'000'000'000'000;  // keeps 4t and the surd recurrence in 64 bits

class VerificationFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, report::Format> kFormats = {
    {"text", report::Format::Text}, {"json", report::Format::Json}, {"csv", report::Format::Csv}};

void require_t(std::int64_t t) {
  if (t < 1 || t > kMaxT) throw Error(ErrorKind::InvalidInput, "t must be in [1, 10^15]");
}

int run_classify(std::int64_t t, bool verify, report::Format format) {
  require_t(t);
  const auto r = report::make_report(t, verify);
  std::cout << report::render(r, format);
  if (r.verified && !*r.verified) throw VerificationFailed("oracle cross-check failed for t=" + std::to_string(t));
  return 0;
}

std::string solution_text(const pell::PellSolution& s) { return "(" + s.x.str() + "," + s.y.str() + ")"; }

/// Oracle check of the minimal solution reported for (D, N).
bool verify_pell(std::int64_t D, std::int64_t N, const std::optional<pell::PellSolution>& minimal) {
  constexpr std::uint64_t cap = report::kVerifySearchCap;
  if (N == 1 || N == -1) {
    const auto unit = pell::minimal_solution_p1(D);
    if (unit.y <= cap) return oracle::brute_minimal(D, N, static_cast<std::uint64_t>(unit.y)) == minimal;
    const auto ck = oracle::chakravala(D);
    return (N == 1 ? std::optional(ck.plus_one) : ck.minus_one) == minimal;
  }
  const BigInt bound = pell::nagell_bound(D, N);
  if (minimal && minimal->y <= cap) {
    if (oracle::brute_minimal(D, N, static_cast<std::uint64_t>(minimal->y)) != minimal) return false;
  }
  if (bound <= cap) {
    return oracle::brute_pell(D, N, static_cast<std::uint64_t>(bound)).empty() == !minimal.has_value();
  }
  return true;
}

int run_pell(std::int64_t D, std::int64_t N, std::optional<std::size_t> all_up_to, std::optional<std::uint64_t> brute,
             bool verify, report::Format format) {
  if (D < 2) throw Error(ErrorKind::InvalidInput, "D must be >= 2");
  if (D > 4 * kMaxT) throw Error(ErrorKind::InvalidInput, "D is too large");
  std::vector<pell::PellSolution> solutions;
  std::optional<pell::PellSolution> minimal;

  if (brute) {
    if (is_perfect_square(D)) throw Error(ErrorKind::SquareRadicand, std::to_string(D) + " is a perfect square");
    solutions = oracle::brute_pell(D, N, *brute);
  } else {
    if (N == 1) {
      minimal = pell::minimal_solution_p1(D);
    } else if (N == -1) {
      minimal = pell::minimal_solution_pm1(D);
    } else {
      minimal = pell::minimal_solution_general(D, N);
    }
    if (all_up_to && minimal && (N == 1 || N == -1)) {
      // positive solutions of the -1 equation are the odd powers of the minimal one
      for (std::size_t i = 0; i < *all_up_to; ++i) {
        const auto exponent = static_cast<std::int64_t>(N == 1 ? i + 1 : 2 * i + 1);
        solutions.push_back(pell::solution_power(*minimal, exponent));
      }
    } else if (all_up_to && minimal) {
      solutions = pell::positive_solutions(D, N, *all_up_to);
    } else if (minimal) {
      solutions.push_back(*minimal);
    }
  }

  std::optional<bool> verified;
  if (verify && !brute) verified = verify_pell(D, N, minimal);

  switch (format) {
    case report::Format::Text: {
      std::cout << "x^2 - " << D << "y^2 = " << N << '\n';
      if (solutions.empty()) std::cout << "no solution\n";
      for (const auto& s : solutions) std::cout << solution_text(s) << '\n';
      if (verified) std::cout << "verified: " << (*verified ? "yes" : "NO") << '\n';
      break;
    }
    case report::Format::Json: {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& s : solutions) list.push_back({s.x.str(), s.y.str()});
      nlohmann::json j = {{"D", std::to_string(D)},
                          {"N", std::to_string(N)},
                          {"solutions", std::move(list)},
                          {"verified", verified ? nlohmann::json(*verified) : nlohmann::json(nullptr)}};
      std::cout << j.dump() << '\n';
      break;
    }
    case report::Format::Csv:
      std::cout << "D,N,x,y\n";
      for (const auto& s : solutions) std::cout << D << ',' << N << ',' << s.x << ',' << s.y << '\n';
      break;
  }
  if (verified && !*verified) throw VerificationFailed("pell oracle cross-check failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ample cones and automorphisms of Hilbert squares of generic K3 surfaces"};
  app.require_subcommand(1);

  std::string format_name = "text";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };

  std::int64_t t = 0;
  bool verify = false;
  auto* classify_cmd = app.add_subcommand("classify", "Full report for one t");
  classify_cmd->add_option("--t", t, "Half the degree of the K3 polarization (H^2 = 2t)")->required();
  classify_cmd->add_flag("--verify", verify, "Cross-check against the brute-force oracles");
  add_format(classify_cmd);

  auto* cone_cmd = app.add_subcommand("cone", "Ample cone of S^[2]");
  cone_cmd->add_option("--t", t, "Half the degree of the K3 polarization (H^2 = 2t)")->required();
  add_format(cone_cmd);

  std::int64_t D = 0, N = 0;
  std::optional<std::size_t> all_up_to;
  std::optional<std::uint64_t> brute;
  auto* pell_cmd = app.add_subcommand("pell", "Solve x^2 - D y^2 = N");
  pell_cmd->add_option("--d", D, "Radicand D (non-square, >= 2)")->required();
  pell_cmd->add_option("--n", N, "Right-hand side N (non-zero)")->required();
  pell_cmd->add_option("--all-up-to", all_up_to, "List the first k positive solutions");
  pell_cmd->add_option("--brute", brute, "List every solution with 0 <= y <= Y by exhaustive search");
  pell_cmd->add_flag("--verify", verify, "Cross-check against the brute-force oracles");
  add_format(pell_cmd);

  std::int64_t from = 0, to = 0;
  bool only_nontrivial = false;
  unsigned jobs = 1;
  auto* scan_cmd = app.add_subcommand("scan", "Classify every t in a range");
  scan_cmd->add_option("--from", from, "First t")->required();
  scan_cmd->add_option("--to", to, "Last t")->required();
  scan_cmd->add_flag("--only-nontrivial", only_nontrivial, "Print only t with a non-trivial automorphism");
  scan_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  add_format(scan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto format = kFormats.at(format_name);
  try {
    if (*classify_cmd) return run_classify(t, verify, format);
    if (*cone_cmd) {
      require_t(t);
      std::cout << report::render_cone(t, format);
      return 0;
    }
    if (*pell_cmd) return run_pell(D, N, all_up_to, brute, verify, format);
    if (*scan_cmd) {
      if (from < 1 || to < from || to > kMaxT) throw Error(ErrorKind::InvalidInput, "scan needs 1 <= from <= to");
      std::cout << report::render_scan(report::scan(from, to, jobs), format, only_nontrivial);
      return 0;
    }
  } catch (const VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == ErrorKind::InternalInconsistency ? kExitMismatch : kExitUsage;
  }
  return kExitUsage;
}
