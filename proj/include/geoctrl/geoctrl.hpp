#pragma once

// Umbrella header.

#include "geoctrl/double_integrator.hpp"
#include "geoctrl/dubins.hpp"
#include "geoctrl/elastica.hpp"
#include "geoctrl/heisenberg.hpp"
#include "geoctrl/lie_brackets.hpp"
#include "geoctrl/linear_control.hpp"
#include "geoctrl/numeric.hpp"
#include "geoctrl/systems.hpp"
#include "geoctrl/vector_field.hpp"
