#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace b4nls {

using cplx = std::complex<double>;

namespace detail {
class FftEngine; // wraps FFTW plans, see grid.cpp
}

/// Uniform periodic collocation grid on L*[-pi, pi).
///
/// Abscissae: x_j = -L*pi + j*h with h = 2*pi*L/N, j = 0..N-1.
/// Wavenumbers in FFT-natural order: k_m = m/L for m = 0..N/2-1,
/// then k_m = (m-N)/L for m = N/2..N-1 (k[N/2] = -N/(2L) is the
/// Nyquist mode).
///
/// Transform convention: forward() is the plain unnormalized DFT sum,
/// inverse() carries the 1/N factor. Physical-space quantities are always
/// formed through the quadrature weight h, so the convention never leaks
/// into results.
///
/// Immutable after construction; transforms on distinct buffers may run
/// concurrently from different threads.
class Grid {
public:
    /// Factory with validation: N must be a power of two >= 8, L > 0.
    static std::shared_ptr<const Grid> make(double L, std::size_t N);

    double half_period_scale() const { return L_; }   // the L in L*[-pi,pi)
    std::size_t size() const { return N_; }
    double spacing() const { return h_; }              // h = 2*pi*L/N
    double period() const { return 2.0 * pi() * L_; }
    double nyquist() const { return static_cast<double>(N_) / (2.0 * L_); }
    double origin() const { return x_[0]; }            // -L*pi

    double x(std::size_t j) const { return x_[j]; }
    double k(std::size_t m) const { return k_[m]; }
    const std::vector<double>& abscissae() const { return x_; }
    const std::vector<double>& wavenumbers() const { return k_; }

    /// Unnormalized forward DFT: out_m = sum_j in_j exp(-2*pi*i*j*m/N).
    std::vector<cplx> forward(const std::vector<cplx>& phys) const;
    /// Inverse DFT with 1/N: out_j = (1/N) sum_m in_m exp(+2*pi*i*j*m/N).
    std::vector<cplx> inverse(const std::vector<cplx>& spec) const;

    void forward_inplace(const std::vector<cplx>& phys, std::vector<cplx>& spec) const;
    void inverse_inplace(const std::vector<cplx>& spec, std::vector<cplx>& phys) const;

    bool compatible_with(const Grid& other) const {
        return N_ == other.N_ && L_ == other.L_;
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    ~Grid();
    Grid(const Grid&) = delete;
    Grid& operator=(const Grid&) = delete;

private:
    Grid(double L, std::size_t N);

    double L_;
    std::size_t N_;
    double h_;
    std::vector<double> x_;
    std::vector<double> k_;
    std::unique_ptr<detail::FftEngine> fft_;
};

using GridPtr = std::shared_ptr<const Grid>;

} // namespace b4nls
