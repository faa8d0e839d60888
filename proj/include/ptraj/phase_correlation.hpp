#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ptraj/frame_ingest.hpp"

namespace ptraj {

// Complex 2D DFT coefficients at the exact source frame dimensions (no padding).
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> values;

    std::complex<double> at(int u, int v) const {
        return values[static_cast<std::size_t>(v) * width + u];
    }
    std::complex<double>& at(int u, int v) {
        return values[static_cast<std::size_t>(v) * width + u];
    }
};

// Real correlation responses; the peak locates the translation.
struct Surface {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Signed per-pair translation with the peak value as a confidence hint.
struct ShiftEstimate {
    int dx = 0;
    int dy = 0;
    double peak_response = 0.0;
    int pair_index = 0;
};

struct CorrelationConfig {
    WindowKind window = WindowKind::None;
    double eps = 1e-12;
};

// Unscaled forward 2D DFT; the DC coefficient equals the pixel sum.
Spectrum forward_transform(const Frame& frame);

// Element-wise R = (Ga o conj(Gb)) / max(|Ga o conj(Gb)|, eps).
Spectrum cross_power_spectrum(const Spectrum& ga, const Spectrum& gb, double eps = 1e-12);

// Real part of the 1/(W*H)-scaled inverse DFT; throws numeric-instability if
// the imaginary residue exceeds 1e-6.
Surface correlation_surface(const Spectrum& r);

// Argmax with ties broken by smallest row-major index; peak cells at or past
// dim/2 wrap to negative shifts. Throws DegenerateSurfaceError on a flat surface.
ShiftEstimate peak_shift(const Surface& surface, int pair_index);

// Full pipeline over one frame pair: window -> DFT x2 -> cross power ->
// inverse -> peak. pair_index is taken from the earlier frame.
ShiftEstimate estimate_shift(const Frame& a, const Frame& b, const CorrelationConfig& config = {});

}  // namespace ptraj
