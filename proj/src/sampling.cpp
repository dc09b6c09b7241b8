#include "pfp/sampling.hpp"

namespace pfp {

GroupElement random_element(const GroupSpec& spec, int radius, Rng& rng)
{
    const BallIndex ball(spec, radius);
    return ball.element(static_cast<std::size_t>(rng.below(ball.size())));
}

AlgebraElement random_scalar_element(const GroupSpec& spec, int radius, int terms, Rng& rng)
{
    AlgebraElement f(spec, ActionSpec::trivial(1));
    const BallIndex ball(spec, radius);
    for (int i = 0; i < terms; ++i) {
        const auto g = ball.element(static_cast<std::size_t>(rng.below(ball.size())));
        const double re = rng.normal();
        const double im = rng.normal();
        f.add(g, Complex(re, im));
    }
    return f;
}

AlgebraElement random_matrix_element(const GroupSpec& spec, const ActionSpec& action, int radius, int terms,
                                     Rng& rng)
{
    AlgebraElement f(spec, action);
    const BallIndex ball(spec, radius);
    const int d = action.dim();
    for (int i = 0; i < terms; ++i) {
        const auto g = ball.element(static_cast<std::size_t>(rng.below(ball.size())));
        CMatrix m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const double re = rng.normal();
                const double im = rng.normal();
                m(r, c) = Complex(re, im);
            }
        f.add(g, m);
    }
    return f;
}

} // namespace pfp
