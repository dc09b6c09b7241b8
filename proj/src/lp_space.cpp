#include "pfp/lp_space.hpp"

#include <algorithm>
#include <cmath>

#include "pfp/errors.hpp"

namespace pfp {

PExponent PExponent::of(double p)
{
    if (!(p >= 1.0))
        throw PreconditionError("exponent p must lie in [1, inf], got " + std::to_string(p));
    if (p == 1.0)
        return PExponent(1.0, kInfinity);
    if (p == kInfinity)
        return PExponent(kInfinity, 1.0);
    if (p == 2.0)
        return PExponent(2.0, 2.0);
    return PExponent(p, p / (p - 1.0));
}

namespace {

double fiber_norm(const Complex* x, std::size_t fiber)
{
    if (fiber == 1)
        return std::abs(x[0]);
    double s = 0.0;
    for (std::size_t i = 0; i < fiber; ++i)
        s += std::norm(x[i]);
    return std::sqrt(s);
}

} // namespace

double lp_norm(std::span<const Complex> v, std::size_t fiber, double p)
{
    const std::size_t points = v.size() / fiber;
    double peak = 0.0;
    for (std::size_t h = 0; h < points; ++h)
        peak = std::max(peak, fiber_norm(v.data() + h * fiber, fiber));
    if (p == kInfinity || peak == 0.0)
        return peak;
    double sum = 0.0;
    if (p == 2.0) {
        for (std::size_t h = 0; h < points; ++h) {
            const double r = fiber_norm(v.data() + h * fiber, fiber) / peak;
            sum += r * r;
        }
        return peak * std::sqrt(sum);
    }
    if (p == 1.0) {
        for (std::size_t h = 0; h < points; ++h)
            sum += fiber_norm(v.data() + h * fiber, fiber);
        return sum;
    }
    for (std::size_t h = 0; h < points; ++h) {
        const double r = fiber_norm(v.data() + h * fiber, fiber);
        if (r > 0.0)
            sum += std::pow(r / peak, p);
    }
    return peak * std::pow(sum, 1.0 / p);
}

void duality_map(std::span<const Complex> v, std::size_t fiber, double p, std::span<Complex> out)
{
    const std::size_t points = v.size() / fiber;
    double peak = 0.0;
    for (std::size_t h = 0; h < points; ++h)
        peak = std::max(peak, fiber_norm(v.data() + h * fiber, fiber));
    for (std::size_t h = 0; h < points; ++h) {
        const Complex* x = v.data() + h * fiber;
        Complex* y = out.data() + h * fiber;
        const double r = fiber_norm(x, fiber);
        if (r == 0.0) {
            std::fill(y, y + fiber, Complex(0.0));
            continue;
        }
        const double scale = (p == 2.0 ? r / peak : std::pow(r / peak, p - 1.0)) / r;
        for (std::size_t i = 0; i < fiber; ++i)
            y[i] = x[i] * scale;
    }
}

double normalize(std::span<Complex> v, std::size_t fiber, double p)
{
    const double n = lp_norm(v, fiber, p);
    if (n > 0.0)
        for (auto& x : v)
            x /= n;
    return n;
}

} // namespace pfp
