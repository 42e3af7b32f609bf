#pragma once

// Umbrella header: the whole library.
//
// hypertet computes the dihedral-angle calculus of generalized hyperbolic
// tetrahedra — tetrahedra in H^3 whose vertices may be finite, ideal, or
// hyperideal — namely the forward map from edge lengths to dihedral
// angles, its analytic Jacobian with the five symmetry families of the
// normalized Jacobian, and a damped-Newton inverse solver from target
// angles back to edge lengths.

#include "errors.hpp"
#include "jacobian.hpp"
#include "json_io.hpp"
#include "kernels.hpp"
#include "link.hpp"
#include "sample.hpp"
#include "solver.hpp"
#include "tetra.hpp"
#include "triangle.hpp"
