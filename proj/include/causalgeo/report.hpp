#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace causalgeo {

using json = nlohmann::json;

// Thrown for unknown scenario names, invalid or unknown parameters, and
// diagram requests without a mapping.
class scenario_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kArtifactVersion = "0.1.0";

// Provenance tags attached to every claim in a report:
//   published - the claim mirrors a published statement the artifact verifies
//   derived   - the value comes from this artifact's own derivations/oracles
//   trivial   - direct arithmetic or bookkeeping
inline constexpr const char* kProvPublished = "published";
inline constexpr const char* kProvDerived = "derived";
inline constexpr const char* kProvTrivial = "trivial";

// A named, reproducible verification run.  `parameters` is a flat JSON object
// of primitives; unknown keys are rejected by the runner.  `expected` maps
// claim names to expected values for self-checking runs; it never enters the
// report payload, so expectation files cannot perturb the artifact bytes.
struct Scenario {
  std::string name;
  json parameters = json::object();
  json expected = json::object();
};

// Report document layout:
//   {
//     "artifact_version": "...",
//     "payload": {
//       "scenario": { "name": ..., "parameters": { effective values } },
//       "claims":   { name: { "value": ..., "provenance": ...,
//                             "witness"?: { primitives } } }
//     },
//     "wall_clock_ms": <timing, excluded from determinism comparisons>
//   }
struct Report {
  json document;
  bool expectations_met = true;
  std::vector<std::string> mismatches;

  const json& payload() const { return document.at("payload"); }
  const json& claims() const { return payload().at("claims"); }

  // Canonical bytes of the deterministic part (sorted keys, fixed layout).
  std::string canonical_payload() const { return payload().dump(2); }
};

// Names accepted by run_scenario, one per CLI verification surface.
std::vector<std::string> scenario_names();

// Executes the named scenario.  Deterministic given the scenario parameters
// (including the seed for sampled scenarios); throws scenario_error on an
// unknown name or invalid parameters.
Report run_scenario(const Scenario& s);

struct ValidationResult {
  bool ok = false;
  std::string error;
};

// Validates a report document against the fixed schema above.  Unknown fields
// anywhere in the document are rejected, with the offending path reported.
ValidationResult validate_report(const json& doc);

}  // namespace causalgeo
