#ifndef MAGICFAB_JSON_IO_H
#define MAGICFAB_JSON_IO_H

#include <string>
#include <string_view>

#include "magicfab/error_analysis.h"
#include "magicfab/pipeline.h"
#include "magicfab/resource_model.h"

namespace magicfab {

/// Version written into, and required from, every JSON document.
inline constexpr int kJsonSchemaVersion = 1;

/// Thrown for malformed or wrong-version JSON input.
class JsonFormatError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

std::string to_json(const InjectionReport &report, int indent = 2);
InjectionReport injection_report_from_json(std::string_view text);

std::string to_json(const MonteCarloResult &result, int indent = 2);

/// {"version": 1, "toffoli_count": .., "t_count": .., "logical_qubits": .., "error_budget": ..}, or
/// {"version": 1, "factoring_bits": n} for the factoring workload.
std::string to_json(const Workload &workload, int indent = 2);
Workload workload_from_json(std::string_view text);

std::string to_json(const ResourceEstimate &estimate, int indent = 2);
ResourceEstimate resource_estimate_from_json(std::string_view text);

/// Every PipelineConfig field by name, plus "version". Missing fields keep the defaults of the
/// named "preset" ("ccz" or "c2t"), or of PipelineConfig{} when no preset is given.
std::string to_json(const PipelineConfig &config, int indent = 2);
PipelineConfig pipeline_config_from_json(std::string_view text);

std::string to_json(const PipelineStats &stats, int indent = 2);
PipelineStats pipeline_stats_from_json(std::string_view text);

std::string to_json(const CatalystErrorStats &stats, int indent = 2);

}  // namespace magicfab

#endif
