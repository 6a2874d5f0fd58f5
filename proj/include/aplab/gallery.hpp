#ifndef APLAB_GALLERY_HPP
#define APLAB_GALLERY_HPP

#include <map>
#include <string>
#include <vector>

#include "aplab/classify.hpp"
#include "aplab/dosscond.hpp"
#include "aplab/operators.hpp"
#include "aplab/seminorm.hpp"

// Constructors for the worked example fields, each bundled with its expected
// properties and a verification recipe that reruns the relevant analyses.

namespace aplab {

enum class Preset { Fast, Standard, Deep };
Preset preset_from_name(const std::string& name);
const char* preset_name(Preset p);

struct PropertyResult {
  enum class Status { Pass, Fail, Inconclusive };
  Status status = Status::Inconclusive;
  std::string detail;
};
const char* property_status_name(PropertyResult::Status s);

struct PropertyCheck {
  std::string name;
  std::string claim;  // behavioral statement being verified
  bool inconclusive_allowed = false;
  std::function<PropertyResult(Preset)> run;
};

struct GalleryEntry {
  std::string id;
  std::string formula;  // rendered definition
  std::map<std::string, double> params;
  Field field;
  std::vector<PropertyCheck> checks;
};

std::vector<std::string> gallery_list();

// Throws std::invalid_argument for unknown ids or parameters outside the
// documented ranges (the violated inequality is spelled out).
GalleryEntry gallery_get(const std::string& id, std::map<std::string, double> params = {});

struct VerifyReport {
  std::string id;
  Preset preset = Preset::Standard;
  std::vector<std::pair<std::string, PropertyResult>> results;
  int passed = 0, failed = 0, inconclusive = 0;
};

VerifyReport gallery_verify(const std::string& id, Preset preset = Preset::Standard);

// id -> parameter defaults, formula, claims. JSON text.
std::string gallery_manifest_json();

// Shared helpers reused by tests and the acceptance suite.
Field brick_power_field(double zeta);            // m^zeta on [m^2, m^2 + sqrt(m))
Field brick_family_field(double pj);             // m^{1/(2 pj)} bricks
Field brick_unit_field();                        // indicator of U_j [j^2-1, j^2], j >= 2
Field haraux_souplet_field(int terms = 40);      // sum (1/n) sin^2(t / 2^n)
Field sign_flip_field(double lambda0);           // +-e^{-i lambda0 t} across 0
TrigPolynomial two_freq_polynomial();            // e^{i(sqrt2 x + y)} + e^{i(2x + y)}
Pt two_freq_shift();                             // (pi(2+sqrt2), 2pi(1-sqrt2))

}  // namespace aplab

#endif  // APLAB_GALLERY_HPP
