#pragma once

#include <json.hpp>

#include "config.hpp"
#include "reclab/descriptor.hpp"
#include "reclab/measure.hpp"
#include "reclab/ramsey.hpp"
#include "reclab/witness.hpp"

namespace reclab::cli {

using Json = nlohmann::json;

// Builders shared by run, verify and the gen subcommand.
SequenceSpec build_sequence(const std::string& text);
SetDescriptor build_descriptor(const ConfigNode& node);
SystemSpec build_system(const ConfigNode& node);
SystemPoint build_point(const SystemSpec& sys, const std::string& text);
Neighborhood build_neighborhood(const SystemSpec& sys, const ConfigNode& node);
FiniteMeasureSystem build_fms(const ConfigNode& node);
SearchBudget build_budget(const ConfigNode& node);
WitnessOptions build_options(const ConfigNode& node);

Json config_to_json(const ConfigNode& node);
ConfigNode config_from_json(const Json& j);

std::string canonical_hash(const Json& report_core);

struct RunOutcome {
  Json report;
  bool witness_missing = false;
  bool precision_exhausted = false;
};

// Executes one experiment described by the config; the report carries the
// echoed config, the outcome payload and a canonical content hash (wall time
// excluded from the hash).
RunOutcome run_experiment(const ConfigNode& config, int threads);

struct VerifyOutcome {
  bool ok = true;
  std::string first_failure;
};

// Recomputes every certificate in the report (subset sums, memberships,
// measures) from the echoed config, then the canonical hash.
VerifyOutcome verify_report(const Json& report);

std::string point_str(const SystemPoint& p);

}  // namespace reclab::cli
