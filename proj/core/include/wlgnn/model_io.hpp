#pragma once

#include <string>
#include <string_view>

#include "wlgnn/gnn.hpp"

namespace wlgnn {

/// JSON model files. Rationals are written as "p/q" strings; numbers are
/// also accepted on input and converted exactly from their decimal text.
/// Layers whose comb is a single affine stage use the A/b/activation
/// shorthand; other combs are written as a typed stage list. Files record
/// "fnn": false when any oracle or builtin stage is present.
std::string write_model(const GnnModel& m);
GnnModel read_model(std::string_view json_text);

void write_model_file(const GnnModel& m, const std::string& path);
GnnModel read_model_file(const std::string& path);

}  // namespace wlgnn
