// Command-line front end. Talks to the library exclusively through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "its/its.h"

namespace {

struct Failure {
  its_status status;
  std::string message;
};

void check(its_status status) {
  if (status != ITS_OK) throw Failure{status, its_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  its_string_free(s);
  return out;
}

struct DatasetDeleter {
  void operator()(its_dataset* d) const { its_dataset_free(d); }
};
struct ReportDeleter {
  void operator()(its_report* r) const { its_report_free(r); }
};
using DatasetPtr = std::unique_ptr<its_dataset, DatasetDeleter>;
using ReportPtr = std::unique_ptr<its_report, ReportDeleter>;

its_error_kind parse_kind(const std::string& s) {
  if (s == "iid") return ITS_ERROR_IID;
  if (s == "ar1") return ITS_ERROR_AR1;
  if (s == "arma11") return ITS_ERROR_ARMA11;
  throw Failure{ITS_E_CONFIG, "unknown --error '" + s + "' (expected iid|ar1|arma11)"};
}

its_format parse_format(const std::string& s) {
  if (s == "text") return ITS_FORMAT_TEXT;
  if (s == "csv") return ITS_FORMAT_CSV;
  if (s == "jsonl") return ITS_FORMAT_JSONL;
  throw Failure{ITS_E_CONFIG, "unknown --format '" + s + "' (expected text|csv|jsonl)"};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{ITS_E_IO, "cannot write '" + path.string() + "'"};
  out << content;
  if (!out) throw Failure{ITS_E_IO, "write failed for '" + path.string() + "'"};
}

struct AnalysisOptions {
  std::string input;
  std::string date_col = "date";
  std::string date_format = "YYYY-MM";
  std::string outcomes;
  std::string intervention;
  std::string origin;
  std::string error = "ar1";
  std::string hac_value;
  CLI::Option* hac = nullptr;
  std::string horizons = "all";
  std::string units;
  std::string format = "text";
  std::string out;
};

void add_analysis_options(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_option("--input", o.input, "CSV file with a header row")->required();
  cmd->add_option("--date-col", o.date_col, "Name of the date column")->capture_default_str();
  cmd->add_option("--date-format", o.date_format, "Date pattern: YYYY, MM, DD placeholders, backslash for a literal")
      ->capture_default_str();
  cmd->add_option("--outcomes", o.outcomes, "Comma-separated outcome columns (default: all)");
  cmd->add_option("--intervention", o.intervention, "Intervention month, e.g. 2020-03")->required();
  cmd->add_option("--origin", o.origin, "Month coded as T=1 (default: first observation)");
  cmd->add_option("--error", o.error, "Residual model: iid|ar1|arma11")->capture_default_str();
  o.hac = cmd->add_option("--hac", o.hac_value, "Newey-West standard errors, optional bandwidth (iid only)")
              ->expected(0, 1);
  cmd->add_option("--horizons", o.horizons, "all, or comma-separated post-intervention months")
      ->capture_default_str();
  cmd->add_option("--units", o.units, "Unit labels for effect tables, e.g. BJ=Billion IDR,TKB90=Point");
  cmd->add_option("--format", o.format, "text|csv|jsonl")->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (text) or directory (csv/jsonl); default stdout");
}

ReportPtr run(const AnalysisOptions& o) {
  its_dataset* raw_data = nullptr;
  check(its_dataset_read_csv(o.input.c_str(), o.date_col.c_str(), o.date_format.c_str(), o.outcomes.c_str(),
                             &raw_data));
  DatasetPtr data(raw_data);

  its_analysis_config cfg;
  its_analysis_config_init(&cfg);
  cfg.date_format = o.date_format.c_str();
  cfg.outcomes = o.outcomes.c_str();
  cfg.intervention = o.intervention.c_str();
  cfg.time_origin = o.origin.c_str();
  cfg.error_kind = parse_kind(o.error);
  if (o.hac->count() > 0) {
    cfg.hac = 1;
    if (!o.hac_value.empty() && o.hac_value != "auto") {
      try {
        std::size_t used = 0;
        cfg.hac_bandwidth = std::stoi(o.hac_value, &used);
        if (used != o.hac_value.size() || cfg.hac_bandwidth < 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Failure{ITS_E_CONFIG, "--hac bandwidth must be a non-negative integer or 'auto'"};
      }
    }
  }
  cfg.horizons = o.horizons.c_str();
  cfg.unit_labels = o.units.c_str();

  its_report* raw_report = nullptr;
  check(its_analysis_run(data.get(), &cfg, &raw_report));
  return ReportPtr(raw_report);
}

const char* section_file(its_section s) {
  switch (s) {
    case ITS_SECTION_COEFFICIENTS: return "coefficients";
    case ITS_SECTION_FIT_SUMMARY: return "fit_summary";
    case ITS_SECTION_EFFECTS: return "effects";
    case ITS_SECTION_DIAGNOSTICS: return "diagnostics";
    case ITS_SECTION_ACF: return "acf";
  }
  return "section";
}

void emit(const AnalysisOptions& o, const its_report* report, const std::vector<its_section>& sections,
          bool with_plot) {
  const its_format format = parse_format(o.format);
  const char* ext = format == ITS_FORMAT_CSV ? ".csv" : ".jsonl";

  // (name, content) in output order.
  std::vector<std::pair<std::string, std::string>> parts;
  for (its_section s : sections) {
    char* text = nullptr;
    check(its_report_render(report, s, format, &text));
    parts.emplace_back(section_file(s), take(text));
  }
  if (with_plot) {
    for (std::size_t i = 0; i < its_report_outcome_count(report); ++i) {
      char* text = nullptr;
      check(its_report_render_plot(report, i, format, &text));
      parts.emplace_back(std::string("plot_") + its_report_outcome_name(report, i), take(text));
    }
  }

  if (format == ITS_FORMAT_TEXT) {
    std::string all;
    for (std::size_t i = 0; i < parts.size(); ++i) all += (i ? "\n" : "") + parts[i].second;
    if (o.out.empty()) std::cout << all;
    else write_file(o.out, all);
    return;
  }
  if (o.out.empty()) {
    for (const auto& [name, content] : parts) {
      if (format == ITS_FORMAT_CSV) std::cout << "# " << name << "\n";
      std::cout << content;
    }
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw Failure{ITS_E_IO, "cannot create directory '" + o.out + "': " + ec.message()};
  for (const auto& [name, content] : parts) write_file(std::filesystem::path(o.out) / (name + ext), content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interrupted time series analysis: segmented regression with ARMA errors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", its_version());

  AnalysisOptions fit_opts, effects_opts, diagnose_opts;
  auto* fit = app.add_subcommand("fit", "Fit the segmented regression and print coefficients");
  add_analysis_options(fit, fit_opts);
  auto* effects = app.add_subcommand("effects", "Counterfactual effect tables and plot series");
  add_analysis_options(effects, effects_opts);
  auto* diagnose = app.add_subcommand("diagnose", "Residual autocorrelation diagnostics");
  add_analysis_options(diagnose, diagnose_opts);

  auto* simulate = app.add_subcommand("simulate", "Write the synthetic 39-month reference dataset as CSV");
  std::uint64_t seed = 20200302;
  std::string sim_error = "iid";
  double phi = 0.0, theta = 0.0;
  std::string sim_out;
  simulate->add_option("--seed", seed, "Random seed")->capture_default_str();
  simulate->add_option("--error", sim_error, "Noise model: iid|ar1|arma11")->capture_default_str();
  simulate->add_option("--phi", phi, "AR coefficient for ar1/arma11 noise")->capture_default_str();
  simulate->add_option("--theta", theta, "MA coefficient for arma11 noise")->capture_default_str();
  simulate->add_option("--out", sim_out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: E_CONFIG: " << e.what() << "\n";
    return its_status_exit_code(ITS_E_CONFIG);
  }

  try {
    if (*simulate) {
      its_dataset* raw = nullptr;
      check(its_dataset_simulate_reference(seed, parse_kind(sim_error), phi, theta, &raw));
      DatasetPtr data(raw);
      char* text = nullptr;
      check(its_dataset_to_csv(data.get(), &text));
      const std::string csv = take(text);
      if (sim_out.empty()) std::cout << csv;
      else write_file(sim_out, csv);
    } else if (*fit) {
      ReportPtr report = run(fit_opts);
      emit(fit_opts, report.get(), {ITS_SECTION_COEFFICIENTS, ITS_SECTION_FIT_SUMMARY}, false);
    } else if (*effects) {
      ReportPtr report = run(effects_opts);
      emit(effects_opts, report.get(), {ITS_SECTION_EFFECTS}, true);
    } else if (*diagnose) {
      ReportPtr report = run(diagnose_opts);
      emit(diagnose_opts, report.get(), {ITS_SECTION_DIAGNOSTICS, ITS_SECTION_ACF}, false);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << its_status_name(f.status) << ": " << f.message << "\n";
    return its_status_exit_code(f.status);
  }
  return 0;
}
