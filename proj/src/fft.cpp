#include "cylwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace cylwave {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> buf(n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[key] = plan;
    return plan;
}

void execute(std::vector<std::complex<double>>& data, int sign) {
    fftw_plan plan = get_plan(static_cast<int>(data.size()), sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

} // namespace

void fft_forward(std::vector<std::complex<double>>& data) { execute(data, FFTW_FORWARD); }
void fft_backward(std::vector<std::complex<double>>& data) { execute(data, FFTW_BACKWARD); }

double fft_frequency(int k, int n, double dx) {
    const int ks = (k <= n / 2) ? k : k - n;
    return 2.0 * M_PI * ks / (n * dx);
}

SpectralLine spectrum(const LineFunction& f) {
    const int n = f.size();
    SpectralLine s;
    s.grid = f.grid;
    s.xi.resize(n);
    s.coeff.resize(n);
    std::vector<std::complex<double>> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = f.values[j];
    fft_forward(buf);
    const double x0 = f.grid.node(0);
    for (int k = 0; k < n; ++k) {
        const double xi = fft_frequency(k, n, f.grid.dx);
        s.xi[k] = xi;
        // dx * exp(-i xi x0) * DFT_k approximates int f exp(-i xi x) dx.
        s.coeff[k] = f.grid.dx * std::polar(1.0, -xi * x0) * buf[k];
    }
    return s;
}

LineFunction inverse_spectrum(const SpectralLine& s) {
    const int n = static_cast<int>(s.coeff.size());
    std::vector<std::complex<double>> buf(n);
    const double x0 = s.grid.node(0);
    for (int k = 0; k < n; ++k)
        buf[k] = s.coeff[k] * std::polar(1.0, s.xi[k] * x0) / s.grid.dx;
    fft_backward(buf);
    LineFunction out(s.grid);
    for (int j = 0; j < n; ++j) out.values[j] = buf[j].real() / n;
    return out;
}

} // namespace cylwave
