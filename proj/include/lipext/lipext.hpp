#pragma once

#include "lipext/error.hpp"
#include "lipext/geometry.hpp"
#include "lipext/kpoint.hpp"
#include "lipext/graph.hpp"
#include "lipext/extension.hpp"
#include "lipext/scalar_extension.hpp"
#include "lipext/vector_extension.hpp"
#include "lipext/generators.hpp"
