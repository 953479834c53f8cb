#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fissile/brunnian.hpp"
#include "fissile/suites.hpp"

using namespace fissile;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string params_text(const nlohmann::json& params) {
  std::string out;
  for (const auto& [k, v] : params.items()) {
    if (!out.empty()) out += ' ';
    out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

/// Writes one JSON line per report and a human summary; returns the exit code.
int emit(const std::vector<CaseReport>& reports) {
  int failed = 0, skipped = 0;
  for (const auto& r : reports) {
    std::cout << report_to_json(r).dump() << '\n';
    std::string tag = r.verdict == Verdict::pass ? "PASS" : r.verdict == Verdict::fail ? "FAIL" : "SKIP";
    std::cerr << tag << "  " << r.suite << "  " << params_text(r.params) << "  (" << r.checks << " checks, "
              << r.seconds << " s)";
    if (!r.detail.empty()) std::cerr << "  " << r.detail;
    std::cerr << '\n';
    failed += r.verdict == Verdict::fail;
    skipped += r.verdict == Verdict::skipped_guard;
  }
  std::cout.flush();
  std::cerr << reports.size() << " case(s): " << reports.size() - failed - skipped << " passed, " << failed
            << " failed, " << skipped << " skipped by guard\n";
  return failed ? kExitFail : kExitPass;
}

CaseReport word_report(const std::string& command, nlohmann::json params) {
  CaseReport r;
  r.suite = command;
  r.params = std::move(params);
  return r;
}

/// Parses a word over x1..x_alphabet, or reports a usage error.
std::optional<FreeWord> read_word(const std::string& text, int alphabet, const std::string& command) {
  try {
    FreeWord w = parse_word(text);
    for (const auto& l : w) {
      if (alphabet > 0 && l.gen >= alphabet) {
        std::cerr << command << ": generator x" << l.gen + 1 << " is outside the alphabet of size " << alphabet << '\n';
        return std::nullopt;
      }
    }
    return w;
  } catch (const WordParseError& e) {
    CaseReport r = word_report(command, {{"word", text}});
    r.verdict = Verdict::fail;
    r.detail = std::string("parse error: ") + e.what();
    r.result = {{"parse_error", {{"position", e.position()}}}};
    std::cout << report_to_json(r).dump() << std::endl;
    std::cerr << command << ": parse error at position " << e.position() << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fissile ensembles: construction, verification and free-group tools"};
  app.require_subcommand(1);

  SuiteBounds bounds;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite, "identities, nabla, lift, fissilizer, simplicial, retractions, witnesses or brunnian")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-a", bounds.max_a, "Largest |A|")->check(CLI::Range(0, 8));
  verify->add_option("--max-i", bounds.max_i, "Largest |I|")->check(CLI::Range(0, 8));
  verify->add_option("--max-e", bounds.max_e, "Largest |E|")->check(CLI::Range(1, 8));
  verify->add_option("--bound", bounds.bound, "Dimension bound for the simplicial suites")->check(CLI::Range(1, 8));
  verify->add_option("--seed", bounds.seed, "Seed for the randomized suites");

  int i = 0, e = 0;
  std::string out_dir, in_dir;
  auto* construct_pj = app.add_subcommand("construct-pj", "Construct every p_J^F and write the artifacts");
  construct_pj->add_option("--i", i, "|I|")->required()->check(CLI::Range(0, 64));
  construct_pj->add_option("--e", e, "|E|")->required()->check(CLI::Range(1, 64));
  construct_pj->add_option("--out", out_dir, "Output directory")->required();

  auto* check_pj = app.add_subcommand("check-pj", "Re-verify a construction from its files");
  check_pj->add_option("--in", in_dir, "Artifact directory")->required();

  auto* construct_q = app.add_subcommand("construct-q", "Construct q with its almost-fissility and boundary witnesses");
  construct_q->add_option("--i", i, "|I|")->required()->check(CLI::Range(0, 64));
  construct_q->add_option("--e", e, "|E|")->required()->check(CLI::Range(1, 64));
  construct_q->add_option("--out", out_dir, "Output directory (a scratch directory if omitted)");

  std::string word;
  int alphabet = 0, degree = 0;
  auto* brunnian = app.add_subcommand("check-brunnian", "Decide whether a word is Brunnian");
  brunnian->add_option("--word", word, "Word such as \"x1 x2 x1^-1 x2^-1\"")->required();
  brunnian->add_option("--alphabet", alphabet, "Number of generators |I|")->required()->check(CLI::Range(1, 32));

  auto* magnus_cmd = app.add_subcommand("magnus", "Magnus expansion truncated at a degree");
  magnus_cmd->add_option("--word", word, "Word")->required();
  magnus_cmd->add_option("--degree", degree, "Truncation degree")->required()->check(CLI::Range(0, 12));

  auto* lcs = app.add_subcommand("lcs", "Lower central series degree of a word");
  lcs->add_option("--word", word, "Word")->required();
  lcs->add_option("--max-degree", degree, "Largest degree examined")->required()->check(CLI::Range(1, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);
    std::cerr << err.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (verify->parsed()) {
    try {
      return emit(run_suite(suite, bounds));
    } catch (const UnknownSuite& err) {
      std::cerr << err.what() << "\n\n" << verify->help();
      return kExitUsage;
    }
  }
  if (construct_pj->parsed()) return emit({run_construct_p(i, e, out_dir)});
  if (check_pj->parsed()) return emit({run_check(in_dir)});
  if (construct_q->parsed()) {
    return emit({run_construct_q(i, e, out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir))});
  }
  if (brunnian->parsed()) {
    const auto w = read_word(word, alphabet, "check-brunnian");
    if (!w) return kExitUsage;
    CaseReport r = word_report("check-brunnian", {{"word", format_word(*w)}, {"alphabet", alphabet}});
    r.checks = 1;
    r.result = {{"brunnian", is_brunnian(*w, full_set(alphabet))}};
    r.detail = r.result["brunnian"].get<bool>() ? "true" : "false";
    return emit({r});
  }
  if (magnus_cmd->parsed()) {
    const auto w = read_word(word, 0, "magnus");
    if (!w) return kExitUsage;
    CaseReport r = word_report("magnus", {{"word", format_word(*w)}, {"degree", degree}});
    r.checks = 1;
    r.result = {{"series", series_to_json(magnus(*w, degree))}};
    return emit({r});
  }
  if (lcs->parsed()) {
    const auto w = read_word(word, 0, "lcs");
    if (!w) return kExitUsage;
    CaseReport r = word_report("lcs", {{"word", format_word(*w)}, {"max_degree", degree}});
    r.checks = 1;
    const auto d = lcs_degree(*w, degree);
    r.result = {{"degree", d ? nlohmann::json(*d) : nlohmann::json(nullptr)}};
    r.detail = d ? std::to_string(*d) : "above " + std::to_string(degree);
    return emit({r});
  }
  return kExitUsage;
}
