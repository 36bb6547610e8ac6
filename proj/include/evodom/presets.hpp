#pragma once

#include <optional>
#include <string_view>

#include "evodom/model_params.hpp"

namespace evodom {

// Built-in scenarios.  All three share d1 = 0.2, d2 = 0.1, a1 = a2 = 1.2,
// b1 = b2 = 0.013, c1 = c2 = 0.012, interval (0, 1), n = 1, T = 2, and
// differ only in the evolution law:
//
//   example5_1  static domain,            rho = 1
//   example5_2  growing-shrinking domain, rho = 1 + 0.5 |sin(pi t)|
//   example5_3  shrinking-growing domain, rho = 1 - 0.3 |sin(pi t)|
//
// The |sin(pi t)| laws are genuinely 2-periodic (two arches per period) and
// their mean inverse-square sizes are 0.6020 and 1.5853 to the four digits
// the scenarios are known by.
enum class Preset { example5_1, example5_2, example5_3 };

std::optional<Preset> preset_from_name(std::string_view name);
std::string_view preset_name(Preset p);

ModelParams preset_params(Preset p);

}  // namespace evodom
