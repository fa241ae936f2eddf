#pragma once

#include "qgeom/configuration.hpp"
#include "qgeom/datasets.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/io.hpp"
#include "qgeom/laplacian.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/parallel.hpp"
#include "qgeom/reference.hpp"
#include "qgeom/states.hpp"
#include "qgeom/topology.hpp"
#include "qgeom/training.hpp"
