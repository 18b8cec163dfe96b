#include "npplab/model.hpp"

namespace npplab {

std::string dist_name(Dist d) {
    return d == Dist::gaussian ? "gaussian" : "uniform_pm1";
}

Dist dist_from_name(const std::string& name) {
    if (name == "gaussian") return Dist::gaussian;
    if (name == "uniform_pm1") return Dist::uniform_pm1;
    throw std::invalid_argument("unsupported dist tag '" + name + "'");
}

std::string SignVector::to_string() const {
    std::string s(static_cast<size_t>(n), '+');
    for (int i = 0; i < n; ++i)
        if (!is_plus(i)) s[i] = '-';
    return s;
}

SignVector SignVector::from_string(const std::string& s) {
    SignVector x(static_cast<int>(s.size()), false);
    for (int i = 0; i < x.n; ++i) {
        if (s[i] == '+') x.set(i, true);
        else if (s[i] != '-') throw std::invalid_argument("sign string must be over {+,-}");
    }
    return x;
}

static void check_dims(const Instance& g, const SignVector& x) {
    if (g.n != x.n)
        throw std::invalid_argument("dimension mismatch: instance n=" + std::to_string(g.n) +
                                    ", sign vector n=" + std::to_string(x.n));
}

Wide inner(const Instance& g, const SignVector& x) {
    check_dims(g, x);
    Wide s = 0;
    for (int i = 0; i < g.n; ++i) {
        if (x.is_plus(i)) s += g.values[i];
        else s -= g.values[i];
    }
    return s;
}

double energy_from_disc(const Instance& g, const Wide& s) {
    if (s == 0) return std::numeric_limits<double>::infinity();
    return g.scale_bits - log2_abs(s);
}

double energy(const Instance& g, const SignVector& x) {
    return energy_from_disc(g, inner(g, x));
}

bool is_solution(const Instance& g, const SignVector& x, EnergyLevel lvl) {
    Wide t = threshold_q(g, lvl);
    Wide s = inner(g, x);
    return boost::multiprecision::abs(s) <= t;
}

Wide flip_delta(const Instance& g, const Wide& s, const SignVector& x, int i) {
    if (i < 0 || i >= g.n) throw std::out_of_range("flip index out of range");
    // Flipping coordinate i changes s by -2 x_i q_i.
    if (x.is_plus(i)) return s - 2 * g.values[i];
    return s + 2 * g.values[i];
}

Instance restrict_to(const Instance& g, const CoordinateSet& s) {
    if (s.n != g.n) throw std::invalid_argument("coordinate set dimension mismatch");
    Instance r = g;
    for (int i = 0; i < g.n; ++i)
        if (!s.contains(i)) r.values[i] = 0;
    return r;
}

}  // namespace npplab
