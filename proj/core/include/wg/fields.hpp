#pragma once

#include <functional>

#include "wg/geometry.hpp"

namespace wg {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

} // namespace wg
