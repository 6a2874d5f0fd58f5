#ifndef APLAB_JOBS_HPP
#define APLAB_JOBS_HPP

#include <string>

#include "aplab/gallery.hpp"

// Job configuration and command execution for the command-line front end.
// Configs round-trip through JSON losslessly; unknown keys are rejected.

namespace aplab {

struct JobOutcome {
  int exit_code = 0;        // 0 ok, 1 error, 2 inconclusive headline verdict
  std::string report_json;  // written to <out>/report.json
  std::string sweep_csv;    // written to <out>/sweep.csv when nonempty
  std::string error;        // diagnostic for exit code 1 (stderr)
};

// Parses, validates (strict keys) and re-serializes a config; the result is
// byte-stable under parse -> dump -> parse.
std::string normalize_config(const std::string& config_json);

// Runs the command named in the config. `preset`, `window_shape` and `seed`
// act as defaults when the config does not pin them.
JobOutcome run_job(const std::string& config_json, const std::string& preset = "standard",
                   const std::string& window_shape = "", long seed = 0);

}  // namespace aplab

#endif  // APLAB_JOBS_HPP
