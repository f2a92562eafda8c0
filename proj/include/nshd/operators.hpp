#pragma once

#include "nshd/field.hpp"

namespace nshd {

/// u <- u - k (k.u)/|k|^2 per mode; the k = 0 mode is left untouched.
SpectralVectorField leray_project(SpectralVectorField u);

/// i k_axis * u_component.
ComplexArray spectral_derivative(const SpectralVectorField& u, int component, int axis);
ComplexArray spectral_derivative(const WavenumberLattice& lat, std::span<const Complex> f, int axis);

/// Zero every mode outside the 2/3 mask.
SpectralVectorField dealias(SpectralVectorField u);
void dealias_in_place(const WavenumberLattice& lat, ComplexArray& f);

/// Spectral curl. For n = 2 the result has a single component
/// (d_x u_2 - d_y u_1); for n = 3 it has three.
SpectralVectorField vorticity(const SpectralVectorField& u);

/// Physical-space samples of every d_axis u_component, indexed
/// [component][axis].
std::vector<std::vector<std::vector<double>>> physical_gradient(const SpectralVectorField& u);

}  // namespace nshd
