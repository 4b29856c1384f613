#include "gwl/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "gwl/errors.hpp"

namespace gwl {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plans are created once per size with FFTW_UNALIGNED so they can be
// executed on arbitrary caller buffers via the new-array interface,
// which is the thread-safe part of FFTW.
PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    cvec dummy_in(n), dummy_out(n);
    auto* in = reinterpret_cast<fftw_complex*>(dummy_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(dummy_out.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!pp.fwd || !pp.bwd) throw NumericError("fftw plan creation failed for n=" + std::to_string(n));
    return cache.emplace(n, pp).first->second;
}

cvec execute(const cvec& in, bool forward) {
    const int n = static_cast<int>(in.size());
    if (n == 0) throw ParamError("fft: empty input");
    PlanPair& pp = plans_for(n);
    cvec out(n);
    cvec tmp(in);  // fftw may not accept const input
    auto* pin = reinterpret_cast<fftw_complex*>(tmp.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(forward ? pp.fwd : pp.bwd, pin, pout);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& z : out) z *= scale;
    return out;
}

}  // namespace

cvec fft_forward(const cvec& in) { return execute(in, true); }
cvec fft_inverse(const cvec& in) { return execute(in, false); }

}  // namespace gwl
