#pragma once

#include "hypflow/shapes.hpp"
#include "json_io.hpp"

namespace hypflow::detail {

json shape_to_json_value(const ShapeSpec& s);
ShapeSpec shape_from_json_value(const json& j);

}  // namespace hypflow::detail
