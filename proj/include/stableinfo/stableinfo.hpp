#pragma once

// Stable densities in Zolotarev's (M) parameterization for alpha in (1, 2]:
// exact evaluation by integral representation and Fourier inversion, score
// functions, the 4x4 Fisher information matrix, and the closed-form
// approximants that describe all of these as alpha approaches the Gaussian
// boundary.

#include "asymptotics.hpp"
#include "density.hpp"
#include "fisher.hpp"
#include "fourier.hpp"
#include "integrand.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "result_types.hpp"
