#pragma once

/**
 * @file fft.hpp
 * @brief Thin FFTW wrapper plus the discrete spectrum of a LineFunction.
 *
 * Convention: eta_hat(xi) = int eta(x) exp(-i x xi) dx, inverse carries
 * 1/(2 pi). The DFT approximates eta_hat(xi_k) by dx * exp(-i xi_k x_0) *
 * DFT_k; the phase is kept explicit so SpectralLine coefficients really are
 * samples of the continuum transform.
 */

#include <complex>
#include <vector>

#include "cylwave/grid.hpp"

namespace cylwave {

/// Forward/backward c2c transforms (FFTW, plans cached per size,
/// FFTW_ESTIMATE so planning is deterministic).
void fft_forward(std::vector<std::complex<double>>& data);
void fft_backward(std::vector<std::complex<double>>& data); // unnormalized

/// Signed frequency of DFT bin k for an n-point grid with spacing dx.
double fft_frequency(int k, int n, double dx);

/// Discrete Fourier data of a LineFunction: frequencies and coefficients in
/// the continuum normalization above. Conjugate symmetry holds for real input.
struct SpectralLine {
    std::vector<double> xi;                     // signed frequencies, FFT bin order
    std::vector<std::complex<double>> coeff;    // eta_hat(xi_k)
    LineGrid grid;
};

SpectralLine spectrum(const LineFunction& f);

/// Inverse of `spectrum`: real part of the inverse transform.
LineFunction inverse_spectrum(const SpectralLine& s);

} // namespace cylwave
