#include "its/its.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "its/report.hpp"
#include "its/simulate.hpp"

struct its_dataset {
  its::TimeSeriesDataset data;
};

struct its_report {
  its::Report report;
};

namespace {

thread_local std::string g_last_error;

its_status to_status(its::ErrorCode code) {
  switch (code) {
    case its::ErrorCode::Internal: return ITS_E_INTERNAL;
    case its::ErrorCode::Numerical: return ITS_E_NUMERICAL;
    case its::ErrorCode::SingularDesign: return ITS_E_SINGULAR_DESIGN;
    case its::ErrorCode::Convergence: return ITS_E_CONVERGENCE;
    case its::ErrorCode::Config: return ITS_E_CONFIG;
    case its::ErrorCode::InterventionRange: return ITS_E_INTERVENTION_RANGE;
    case its::ErrorCode::Domain: return ITS_E_DOMAIN;
    case its::ErrorCode::Data: return ITS_E_DATA;
    case its::ErrorCode::Parse: return ITS_E_PARSE;
    case its::ErrorCode::InsufficientData: return ITS_E_INSUFFICIENT_DATA;
    case its::ErrorCode::Io: return ITS_E_IO;
  }
  return ITS_E_INTERNAL;
}

its::ErrorCode to_code(its_status status) {
  switch (status) {
    case ITS_E_NUMERICAL: return its::ErrorCode::Numerical;
    case ITS_E_SINGULAR_DESIGN: return its::ErrorCode::SingularDesign;
    case ITS_E_CONVERGENCE: return its::ErrorCode::Convergence;
    case ITS_E_CONFIG: return its::ErrorCode::Config;
    case ITS_E_INTERVENTION_RANGE: return its::ErrorCode::InterventionRange;
    case ITS_E_DOMAIN: return its::ErrorCode::Domain;
    case ITS_E_DATA: return its::ErrorCode::Data;
    case ITS_E_PARSE: return its::ErrorCode::Parse;
    case ITS_E_INSUFFICIENT_DATA: return its::ErrorCode::InsufficientData;
    case ITS_E_IO: return its::ErrorCode::Io;
    default: return its::ErrorCode::Internal;
  }
}

template <class F>
its_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return ITS_OK;
  } catch (const its::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ITS_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ITS_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ITS_E_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string_view or_default(const char* s, std::string_view fallback) {
  return (s && *s) ? std::string_view(s) : fallback;
}

std::vector<std::string> split_list(const char* s) {
  std::vector<std::string> out;
  if (!s || !*s) return out;
  std::string_view rest(s);
  while (true) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

its::ErrorKind to_kind(its_error_kind kind) {
  switch (kind) {
    case ITS_ERROR_IID: return its::ErrorKind::Iid;
    case ITS_ERROR_AR1: return its::ErrorKind::Ar1;
    case ITS_ERROR_ARMA11: return its::ErrorKind::Arma11;
  }
  throw its::Error(its::ErrorCode::Config, "unknown error kind");
}

its::OutputFormat to_format(its_format format) {
  switch (format) {
    case ITS_FORMAT_TEXT: return its::OutputFormat::Text;
    case ITS_FORMAT_CSV: return its::OutputFormat::Csv;
    case ITS_FORMAT_JSONL: return its::OutputFormat::JsonLines;
  }
  throw its::Error(its::ErrorCode::Config, "unknown output format");
}

void require(const void* p, const char* what) {
  if (!p) throw its::Error(its::ErrorCode::Config, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* its_version(void) { return "1.0.0"; }

const char* its_status_name(its_status status) {
  if (status == ITS_OK) return "OK";
  return its::error_code_name(to_code(status)).data();
}

int its_status_exit_code(its_status status) {
  if (status == ITS_OK) return 0;
  return its::exit_status(to_code(status));
}

const char* its_last_error(void) { return g_last_error.c_str(); }

void its_string_free(char* s) { std::free(s); }

its_status its_dataset_read_csv(const char* path, const char* date_column, const char* date_format,
                                const char* columns, its_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto data = its::ingest_csv(path, or_default(date_column, "date"), or_default(date_format, "YYYY-MM"),
                                split_list(columns));
    *out = new its_dataset{std::move(data)};
  });
}

its_status its_dataset_simulate_reference(uint64_t seed, its_error_kind kind, double phi, double theta,
                                          its_dataset** out) {
  return guarded([&] {
    require(out, "out");
    *out = new its_dataset{its::gen_reference_dataset(seed, to_kind(kind), phi, theta)};
  });
}

its_status its_dataset_to_csv(const its_dataset* data, char** out) {
  return guarded([&] {
    require(data, "dataset");
    require(out, "out");
    *out = copy_string(its::dataset_to_csv(data->data));
  });
}

size_t its_dataset_length(const its_dataset* data) { return data ? data->data.size() : 0; }

size_t its_dataset_series_count(const its_dataset* data) { return data ? data->data.series_count() : 0; }

void its_dataset_free(its_dataset* data) { delete data; }

void its_analysis_config_init(its_analysis_config* config) {
  if (!config) return;
  *config = its_analysis_config{};
  config->date_format = "YYYY-MM";
  config->error_kind = ITS_ERROR_AR1;
  config->hac_bandwidth = -1;
  config->horizons = "all";
}

its_status its_analysis_run(const its_dataset* data, const its_analysis_config* config, its_report** out) {
  return guarded([&] {
    require(data, "dataset");
    require(config, "config");
    require(out, "out");
    its::AnalysisConfig cfg;
    cfg.date_format = std::string(or_default(config->date_format, "YYYY-MM"));
    cfg.outcome_columns = split_list(config->outcomes);
    cfg.intervention = config->intervention ? config->intervention : "";
    if (config->time_origin && *config->time_origin) cfg.time_origin = config->time_origin;
    cfg.error_kind = to_kind(config->error_kind);
    cfg.hac = config->hac != 0;
    if (config->hac_bandwidth >= 0) cfg.hac_bandwidth = config->hac_bandwidth;
    if (or_default(config->horizons, "all") != "all") cfg.horizons = split_list(config->horizons);
    for (const auto& item : split_list(config->unit_labels)) {
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw its::Error(its::ErrorCode::Config, "unit label '" + item + "' is not SERIES=Label");
      cfg.unit_labels[item.substr(0, eq)] = item.substr(eq + 1);
    }
    *out = new its_report{its::run_analysis(data->data, cfg)};
  });
}

size_t its_report_outcome_count(const its_report* report) { return report ? report->report.outcomes.size() : 0; }

const char* its_report_outcome_name(const its_report* report, size_t index) {
  if (!report || index >= report->report.outcomes.size()) return nullptr;
  return report->report.outcomes[index].outcome.c_str();
}

its_status its_report_coefficients(const its_report* report, size_t index, double* beta, double* se,
                                   double* t_stats, double* p_values) {
  return guarded([&] {
    require(report, "report");
    if (index >= report->report.outcomes.size())
      throw its::Error(its::ErrorCode::Domain, "outcome index out of range");
    const its::FitResult& f = report->report.outcomes[index].fit;
    for (std::size_t k = 0; k < 4; ++k) {
      if (beta) beta[k] = f.beta[k];
      if (se) se[k] = f.se[k];
      if (t_stats) t_stats[k] = f.t_stats[k];
      if (p_values) p_values[k] = f.p_values[k];
    }
  });
}

its_status its_report_render(const its_report* report, its_section section, its_format format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (section < ITS_SECTION_COEFFICIENTS || section > ITS_SECTION_ACF)
      throw its::Error(its::ErrorCode::Config, "unknown report section");
    *out = copy_string(its::render(report->report, its::kAllSections[static_cast<std::size_t>(section)],
                                   to_format(format)));
  });
}

its_status its_report_render_plot(const its_report* report, size_t index, its_format format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (index >= report->report.outcomes.size())
      throw its::Error(its::ErrorCode::Domain, "outcome index out of range");
    *out = copy_string(its::render_plot(report->report.outcomes[index], to_format(format)));
  });
}

void its_report_free(its_report* report) { delete report; }

}  // extern "C"
