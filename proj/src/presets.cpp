#include "evodom/presets.hpp"

#include <cmath>

namespace evodom {

std::optional<Preset> preset_from_name(std::string_view name) {
  if (name == "example5_1") return Preset::example5_1;
  if (name == "example5_2") return Preset::example5_2;
  if (name == "example5_3") return Preset::example5_3;
  return std::nullopt;
}

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::example5_1:
      return "example5_1";
    case Preset::example5_2:
      return "example5_2";
    case Preset::example5_3:
      return "example5_3";
  }
  return "unknown";
}

ModelParams preset_params(Preset p) {
  const double T = 2.0;
  PeriodicFn rho = PeriodicFn::constant(1.0, T);
  switch (p) {
    case Preset::example5_1:
      break;
    case Preset::example5_2:
      rho = PeriodicFn::affine_abs_sin(1.0, 0.5, M_PI, T);
      break;
    case Preset::example5_3:
      rho = PeriodicFn::affine_abs_sin(1.0, -0.3, M_PI, T);
      break;
  }
  ModelParams params{
      /*d1=*/0.2,
      /*d2=*/0.1,
      /*a1=*/PeriodicFn::constant(1.2, T),
      /*a2=*/PeriodicFn::constant(1.2, T),
      /*b1=*/PeriodicFn::constant(0.013, T),
      /*b2=*/PeriodicFn::constant(0.013, T),
      /*c1=*/PeriodicFn::constant(0.012, T),
      /*c2=*/PeriodicFn::constant(0.012, T),
      /*law=*/EvolutionLaw(rho, 1),
      /*y_left=*/0.0,
      /*y_right=*/1.0,
  };
  params.validate();
  return params;
}

}  // namespace evodom
