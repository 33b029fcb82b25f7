#include "grid.hpp"

#include "errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace t2flow {

PeriodicGrid::PeriodicGrid(int n_points) : n(n_points) {
    if (n < 16 || n % 2 != 0)
        throw UsageError("grid size must be even and >= 16, got " + std::to_string(n));
    h = 1.0 / static_cast<double>(n);
    if (h * static_cast<double>(n) != 1.0)
        throw UsageError("grid size " + std::to_string(n) +
                         " does not satisfy spacing*n == 1 exactly; use a power of two");
}

void deriv_theta_into(std::span<const double> f, const PeriodicGrid& grid,
                      std::span<double> out) {
    const int n = grid.n;
    if (static_cast<int>(f.size()) != n || static_cast<int>(out.size()) != n)
        throw UsageError("deriv_theta: array length does not match grid size");
    const double scale = 1.0 / (12.0 * grid.h);
    for (int j = 0; j < n; ++j) {
        const int jm2 = (j - 2 + n) % n;
        const int jm1 = (j - 1 + n) % n;
        const int jp1 = (j + 1) % n;
        const int jp2 = (j + 2) % n;
        // grouped so that a constant input cancels exactly
        out[j] = ((f[jm2] - f[jp2]) + 8.0 * (f[jp1] - f[jm1])) * scale;
    }
}

std::vector<double> deriv_theta(std::span<const double> f, const PeriodicGrid& grid) {
    std::vector<double> out(f.size());
    deriv_theta_into(f, grid, out);
    return out;
}

double mean(std::span<const double> f) {
    if (f.empty())
        throw UsageError("mean of empty array");
    double acc = 0.0;
    for (double x : f) acc += x;
    return acc / static_cast<double>(f.size());
}

double weighted_mean(std::span<const double> f, std::span<const double> w) {
    if (f.size() != w.size())
        throw UsageError("weighted_mean: length mismatch");
    if (f.empty())
        throw UsageError("weighted_mean of empty arrays");
    double acc = 0.0;
    for (size_t j = 0; j < f.size(); ++j) acc += f[j] * w[j];
    return acc / static_cast<double>(f.size());
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// iterative radix-2 Cooley-Tukey, in place
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// naive DFT fallback for non-power-of-two sizes
std::vector<std::complex<double>> dft_naive(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    std::vector<std::complex<double>> out(n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * k * j / n;
            acc += f[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<double> idft_naive(const std::vector<std::complex<double>>& c) {
    const int n = static_cast<int>(c.size());
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const double ang = 2.0 * std::numbers::pi * k * j / n;
            acc += c[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[j] = acc.real() / static_cast<double>(n);
    }
    return out;
}

std::vector<std::complex<double>> forward(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    if (is_pow2(n)) {
        std::vector<std::complex<double>> a(f.begin(), f.end());
        fft_pow2(a, false);
        return a;
    }
    return dft_naive(f);
}

std::vector<double> backward(std::vector<std::complex<double>>& c) {
    const int n = static_cast<int>(c.size());
    if (is_pow2(n)) {
        fft_pow2(c, true);
        std::vector<double> out(n);
        for (int j = 0; j < n; ++j) out[j] = c[j].real();
        return out;
    }
    return idft_naive(c);
}

} // namespace

void lowpass_filter(std::vector<double>& f) {
    const int n = static_cast<int>(f.size());
    auto c = forward(f);
    const int keep = n / 3; // highest retained |m|
    for (int k = 0; k < n; ++k) {
        const int m = (k <= n / 2) ? k : k - n;
        if (std::abs(m) > keep) c[k] = 0.0;
    }
    f = backward(c);
}

std::vector<double> cumtrapz_periodic(std::span<const double> g, const PeriodicGrid& grid) {
    const int n = grid.n;
    if (static_cast<int>(g.size()) != n)
        throw UsageError("cumtrapz_periodic: length mismatch");
    std::vector<double> out(n);
    out[0] = 0.0;
    for (int j = 1; j < n; ++j)
        out[j] = out[j - 1] + 0.5 * grid.h * (g[j - 1] + g[j]);
    return out;
}

std::vector<double> spectral_antiderivative(std::span<const double> g, const PeriodicGrid& grid) {
    const int n = grid.n;
    if (static_cast<int>(g.size()) != n)
        throw UsageError("spectral_antiderivative: length mismatch");
    auto c = forward(g);
    c[0] = 0.0;           // zero-mean input assumed; drop any residue
    c[n / 2] = 0.0;       // Nyquist mode has no smooth antiderivative
    for (int k = 1; k < n; ++k) {
        if (k == n / 2) continue;
        const int m = (k < n / 2) ? k : k - n;
        c[k] /= std::complex<double>(0.0, 2.0 * std::numbers::pi * m);
    }
    auto out = backward(c);
    const double f0 = out[0];
    for (auto& x : out) x -= f0; // pin F(theta_0) = 0
    return out;
}

} // namespace t2flow
