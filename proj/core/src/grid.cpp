#include "b4nls/grid.hpp"

#include <fftw3.h>

#include <mutex>

#include "b4nls/errors.hpp"

namespace b4nls {

namespace {
// FFTW's planner is not thread-safe; executions on separate buffers are.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

namespace detail {

class FftEngine {
public:
    explicit FftEngine(std::size_t n) : n_(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // FFTW_UNALIGNED lets the new-array execute functions accept any
        // caller buffer, so a single plan serves all transforms on this grid.
        std::vector<cplx> dummy_in(n), dummy_out(n);
        fwd_ = fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(dummy_in.data()),
                                reinterpret_cast<fftw_complex*>(dummy_out.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd_ = fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(dummy_in.data()),
                                reinterpret_cast<fftw_complex*>(dummy_out.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }

    ~FftEngine() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }

    void forward(const cplx* in, cplx* out) const {
        fftw_execute_dft(fwd_,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

    void backward(const cplx* in, cplx* out) const {
        fftw_execute_dft(bwd_,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    std::size_t n_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

} // namespace detail

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

std::shared_ptr<const Grid> Grid::make(double L, std::size_t N) {
    if (!(L > 0.0))
        throw ConfigError("grid: half-period scale L must be positive");
    if (N < 8 || !is_power_of_two(N))
        throw ConfigError("grid: N must be a power of two >= 8");
    return std::shared_ptr<const Grid>(new Grid(L, N));
}

Grid::Grid(double L, std::size_t N)
    : L_(L), N_(N), h_(2.0 * pi() * L / static_cast<double>(N)),
      fft_(std::make_unique<detail::FftEngine>(N)) {
    x_.resize(N);
    k_.resize(N);
    for (std::size_t j = 0; j < N; ++j)
        x_[j] = -L * pi() + h_ * static_cast<double>(j);
    const std::size_t half = N / 2;
    for (std::size_t m = 0; m < N; ++m) {
        const double mm = (m < half) ? static_cast<double>(m)
                                     : static_cast<double>(m) - static_cast<double>(N);
        k_[m] = mm / L;
    }
}

Grid::~Grid() = default;

std::vector<cplx> Grid::forward(const std::vector<cplx>& phys) const {
    std::vector<cplx> spec(N_);
    forward_inplace(phys, spec);
    return spec;
}

std::vector<cplx> Grid::inverse(const std::vector<cplx>& spec) const {
    std::vector<cplx> phys(N_);
    inverse_inplace(spec, phys);
    return phys;
}

void Grid::forward_inplace(const std::vector<cplx>& phys, std::vector<cplx>& spec) const {
    spec.resize(N_);
    fft_->forward(phys.data(), spec.data());
}

void Grid::inverse_inplace(const std::vector<cplx>& spec, std::vector<cplx>& phys) const {
    phys.resize(N_);
    fft_->backward(spec.data(), phys.data());
    const double inv = 1.0 / static_cast<double>(N_);
    for (auto& v : phys) v *= inv;
}

} // namespace b4nls
