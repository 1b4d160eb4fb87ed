/* C interface to the interrupted time series library.
 *
 * Objects are opaque handles created by its_*_create / read / run calls and
 * released with the matching *_free. Every fallible call returns an
 * its_status; on failure its_last_error() holds a one-line message for the
 * calling thread. Strings returned through char** are heap allocated and
 * must be released with its_string_free.
 */
#ifndef ITS_ITS_H
#define ITS_ITS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ITS_BUILDING_LIBRARY)
#    define ITS_API __declspec(dllexport)
#  else
#    define ITS_API __declspec(dllimport)
#  endif
#else
#  define ITS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum its_status {
  ITS_OK = 0,
  ITS_E_INTERNAL,
  ITS_E_NUMERICAL,
  ITS_E_SINGULAR_DESIGN,
  ITS_E_CONVERGENCE,
  ITS_E_CONFIG,
  ITS_E_INTERVENTION_RANGE,
  ITS_E_DOMAIN,
  ITS_E_DATA,
  ITS_E_PARSE,
  ITS_E_INSUFFICIENT_DATA,
  ITS_E_IO
} its_status;

typedef enum its_error_kind { ITS_ERROR_IID = 0, ITS_ERROR_AR1, ITS_ERROR_ARMA11 } its_error_kind;

typedef enum its_format { ITS_FORMAT_TEXT = 0, ITS_FORMAT_CSV, ITS_FORMAT_JSONL } its_format;

typedef enum its_section {
  ITS_SECTION_COEFFICIENTS = 0,
  ITS_SECTION_FIT_SUMMARY,
  ITS_SECTION_EFFECTS,
  ITS_SECTION_DIAGNOSTICS,
  ITS_SECTION_ACF
} its_section;

typedef struct its_dataset its_dataset;
typedef struct its_report its_report;

/* Analysis options. Comma-separated lists; NULL or "" selects the default. */
typedef struct its_analysis_config {
  const char* date_format;  /* default "YYYY-MM" */
  const char* outcomes;     /* default: every series in the dataset */
  const char* intervention; /* required, in date_format */
  const char* time_origin;  /* default: first period */
  its_error_kind error_kind;
  int hac;                  /* non-zero: Newey-West errors (iid only) */
  int hac_bandwidth;        /* < 0: automatic */
  const char* horizons;     /* "all" or list of periods */
  const char* unit_labels;  /* "SERIES=Label,..." */
} its_analysis_config;

ITS_API const char* its_version(void);
ITS_API const char* its_status_name(its_status status); /* "E_INTERVENTION_RANGE" */
ITS_API int its_status_exit_code(its_status status);    /* 0 ok, 1 numerical, 2 config, 3 data */
ITS_API const char* its_last_error(void);
ITS_API void its_string_free(char* s);

/* Datasets */
ITS_API its_status its_dataset_read_csv(const char* path, const char* date_column, const char* date_format,
                                        const char* columns, its_dataset** out);
ITS_API its_status its_dataset_simulate_reference(uint64_t seed, its_error_kind kind, double phi,
                                                  double theta, its_dataset** out);
ITS_API its_status its_dataset_to_csv(const its_dataset* data, char** out);
ITS_API size_t its_dataset_length(const its_dataset* data);
ITS_API size_t its_dataset_series_count(const its_dataset* data);
ITS_API void its_dataset_free(its_dataset* data);

/* Analysis */
ITS_API void its_analysis_config_init(its_analysis_config* config);
ITS_API its_status its_analysis_run(const its_dataset* data, const its_analysis_config* config,
                                    its_report** out);
ITS_API size_t its_report_outcome_count(const its_report* report);
ITS_API const char* its_report_outcome_name(const its_report* report, size_t index);
/* Any output pointer may be NULL. Arrays hold four entries. */
ITS_API its_status its_report_coefficients(const its_report* report, size_t index, double* beta, double* se,
                                           double* t_stats, double* p_values);
ITS_API its_status its_report_render(const its_report* report, its_section section, its_format format,
                                     char** out);
ITS_API its_status its_report_render_plot(const its_report* report, size_t index, its_format format,
                                          char** out);
ITS_API void its_report_free(its_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ITS_ITS_H */
