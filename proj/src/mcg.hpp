#pragma once

// Pure mapping classes in two exact models: integral unimodular matrices on
// slopes (complexity one) and multitwists about disjoint simple words on a
// punctured surface.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chains.hpp"
#include "common.hpp"
#include "constants.hpp"
#include "farey.hpp"
#include "report.hpp"
#include "words.hpp"

namespace curvebound::mcg {

enum class Model { xi1_matrix, multitwist };

struct TwistComponent {
  words::SimpleCurve core;
  i64 power;
};

/// A curve in whichever model the mapping class lives in.
using Curve = std::variant<farey::Slope, words::SimpleCurve>;

class PureMappingClass {
 public:
  static PureMappingClass matrix(const farey::Matrix& m);
  static PureMappingClass multitwist(const words::PuncturedSurface& s, std::vector<TwistComponent> twists);
  /// `[[a,b],[c,d]]`, or `twist(core=WORD,power=P);...` on the given surface.
  static PureMappingClass parse(std::string_view spec, const std::optional<words::PuncturedSurface>& s);

  Model model() const { return model_; }
  const farey::Matrix& matrix_value() const { return matrix_; }
  const std::optional<words::PuncturedSurface>& surface() const { return surface_; }
  const std::vector<TwistComponent>& twists() const { return twists_; }
  constants::Surface constants_surface() const;
  int complexity() const;
  unsigned abs_euler() const;
  /// Spec text accepted by `parse`.
  std::string str() const;

  Curve apply(const Curve& x, i64 n) const;
  /// Reads a slope (matrix model) or a simple word (multitwist model).
  Curve parse_curve(std::string_view text) const;
  std::string curve_str(const Curve& x) const;
  u128 intersection(const Curve& x, const Curve& y) const;

 private:
  PureMappingClass() = default;
  Model model_ = Model::xi1_matrix;
  farey::Matrix matrix_;
  std::optional<words::PuncturedSurface> surface_;
  std::vector<TwistComponent> twists_;
};

struct SupportComponent {
  std::string id;
  chains::Kind kind;
  i64 power = 0;  // annular components: twist power per iterate
  std::optional<farey::Slope> slope_core;
  std::optional<words::SimpleCurve> word_core;
};

/// Raises unsupported for matrices that are neither hyperbolic nor a power
/// of a single twist.
std::vector<SupportComponent> supports(const PureMappingClass& phi);

enum class Rationale { gadre_tsai, masur_minsky };
std::string_view rationale_name(Rationale r);

struct IterationBound {
  i64 n_min;
  Rationale rationale;
};
IterationBound min_power_for_cutoff(const PureMappingClass& phi, i64 k);

struct ModelValue {
  u128 value;
  u128 slack;
};
ModelValue support_projection_model(const PureMappingClass& phi, const Curve& x, i64 n,
                                    const SupportComponent& component);

struct CheckOptions {
  Real tolerance = 1e-9L;
  /// Shift model distances by their slack in the direction adverse to the
  /// inequality; when false the raw model value is used.
  bool sound_slack = true;
};

InequalityReport check_pure_lower(const PureMappingClass& phi, const Curve& x, i64 n, i64 k,
                                  const CheckOptions& opt = {});
InequalityReport check_pure_upper(const PureMappingClass& phi, const Curve& x, i64 n, i64 k,
                                  const CheckOptions& opt = {});

/// Exact check of i(x, T_a^n x) = |n| i(a, x)^2 with the distance identity
/// residual reported in the details.
InequalityReport check_twist_identity(const farey::Slope& x, const farey::Slope& a, i64 n);
InequalityReport check_twist_identity(const words::PuncturedSurface& s, const words::SimpleCurve& x,
                                      const words::SimpleCurve& a, i64 n);

InequalityReport check_geodesic_theorems(const farey::Slope& x, const farey::Slope& y, i64 k,
                                         constants::Application which, const std::vector<i64>& picks,
                                         const CheckOptions& opt = {});

}  // namespace curvebound::mcg
