#pragma once

#include <complex>
#include <span>

namespace zkd::fft {

// Thin FFTW wrapper. Plans are created once per shape under a lock and are
// executed on caller-owned buffers, so concurrent use from several threads is
// safe. Transforms are unnormalized:
//   Forward:  out[k] = sum_x in[x] e^{-2pi i k.x/N}
//   Backward: out[x] = sum_k in[k] e^{+2pi i k.x/N}
void Forward2d(int nx, int ny, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);
void Backward2d(int nx, int ny, std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out);

// Hermitian half-spectrum (nx * (ny/2+1) entries) to real samples.
void BackwardReal2d(int nx, int ny, std::span<const std::complex<double>> half,
                    std::span<double> out);

}  // namespace zkd::fft
