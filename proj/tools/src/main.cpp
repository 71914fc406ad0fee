#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dunkl/error.hpp"
#include "dunkl_tools/acceptance.hpp"
#include "dunkl_tools/runconfig.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

int exit_code_for(dunkl::ErrorCode c) {
  switch (c) {
    case dunkl::ErrorCode::parse:
    case dunkl::ErrorCode::invalid_argument:
    case dunkl::ErrorCode::plan_inadequate:
    case dunkl::ErrorCode::io:
      return kConfigError;
    default:
      return kFailure;
  }
}

void report_error(const dunkl::Error& e) {
  std::cerr << "{\"error\": \"" << dunkl::to_string(e.code()) << "\", \"message\": \"";
  for (char c : std::string(e.what())) {
    if (c == '"' || c == '\\') std::cerr << '\\';
    std::cerr << c;
  }
  std::cerr << "\"}\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) dunkl::fail(dunkl::ErrorCode::io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int selftest(const std::string& filter, const std::vector<std::string>& inject, const std::string& json_out) {
  dunkl::acceptance::Options opt{filter, inject};
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = dunkl::acceptance::run(opt, [](const dunkl::acceptance::CheckResult& r) {
    std::printf("[%s] %2d %-24s %6.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (results.empty()) {
    std::fprintf(stderr, "no checks match filter '%s'\n", filter.c_str());
    return kConfigError;
  }
  const std::string summary = dunkl::acceptance::summary_json(results, total);
  if (!json_out.empty()) {
    std::ofstream(json_out) << summary;
  } else {
    std::cout << summary;
  }
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) {
      std::fprintf(stderr, "failing criterion %d: %s\n", r.id, r.name.c_str());
      ++failed;
    }
  return failed ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl transform and Paley-Wiener support estimators"};
  app.require_subcommand(1);

  std::string filter, summary_path;
  std::vector<std::string> inject;
  auto* st = app.add_subcommand("selftest", "Run the acceptance checks");
  st->add_option("--filter", filter, "Run only checks with this tag, name or id");
  st->add_option("--inject", inject, "Inject a fault into the named check (e.g. kernel-bound)");
  st->add_option("--json", summary_path, "Write the JSON summary here instead of stdout");

  std::string config, out_dir = ".";
  auto* est = app.add_subcommand("estimate", "Run the estimators of a JSON run config");
  est->add_option("--config", config, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  est->add_option("--out", out_dir, "Output directory for reports and CSV tables");

  std::string tconfig, tout;
  auto* tr = app.add_subcommand("transform", "Export transform samples as CSV");
  tr->add_option("--config", tconfig, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", tout, "CSV output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*st) return selftest(filter, inject, summary_path);
    if (*est) {
      const auto base = std::filesystem::path(config).parent_path().string();
      const auto outputs = dunkl::cli::run_estimate(slurp(config), base.empty() ? "." : base);
      for (const auto& p : dunkl::cli::write_outputs(outputs, out_dir)) std::cout << p << "\n";
      return kOk;
    }
    if (*tr) {
      const auto base = std::filesystem::path(tconfig).parent_path().string();
      const std::string csv = dunkl::cli::run_transform(slurp(tconfig), base.empty() ? "." : base);
      std::ofstream os(tout, std::ios::binary);
      if (!(os << csv)) dunkl::fail(dunkl::ErrorCode::io, "cannot write " + tout);
      return kOk;
    }
  } catch (const dunkl::Error& e) {
    report_error(e);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"internal\", \"message\": \"" << e.what() << "\"}\n";
    return kFailure;
  }
  return kOk;
}
