#pragma once

#include <vector>

#include "relgs/field.hpp"

namespace relgs {

/// w(y + shift), realized by a phase multiply on the spectrum (exact for the
/// trigonometric interpolant; real part taken).
Field translate(const Field& w, const std::vector<double>& shift);

/// Density barycenter of w^2 per axis via the circular mean, mapped back to
/// [-L, L). Well defined on the torus for concentrated densities.
std::vector<double> density_barycenter(const Field& w);

/// Recenters so the density barycenter sits at the origin.
Field recenter(const Field& w);

/// The mass-preserving dilation w_lambda(y) = lambda^{N/2} w(lambda y),
/// evaluated exactly from the trigonometric interpolant of w (separable
/// per-axis nonuniform inverse transform). Faithful while lambda*|y| stays
/// inside the region where w is resolved and decayed.
Field dilate(const Field& w, double lambda);

}  // namespace relgs
