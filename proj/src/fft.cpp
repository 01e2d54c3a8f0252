#include "aplab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace aplab {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

namespace {

// fftw_execute_dft is thread-safe; plan creation is not, hence the mutex.
// Plans are created FFTW_UNALIGNED so they can run on std::vector storage.
class PlanCache {
public:
    fftw_plan get(std::size_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> tmp(n);
        auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(n, plan);
        return plan;
    }
    ~PlanCache() {
        for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mu_;
    std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& buf) {
    if (buf.empty() || (buf.size() & (buf.size() - 1)) != 0)
        throw std::invalid_argument("fft_forward: size must be a power of two");
    fftw_plan plan = cache().get(buf.size());
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace aplab
