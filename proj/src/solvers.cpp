#include "npplab/solvers.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <queue>

namespace npplab {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
};

Caps caps_from_env() {
    int cap_bits = 34;
    if (const char* env = std::getenv("NPPLAB_CAP_BITS")) {
        cap_bits = std::atoi(env);
        if (cap_bits < 8 || cap_bits > 48) cap_bits = 34;
    }
    Caps c;
    c.bf_max_n = cap_bits;
    c.enum_max_n = cap_bits - 4;
    c.mitm_max_n = cap_bits + 10;
    c.ball_work = 1ull << (cap_bits - 11);
    return c;
}

template <class Acc>
Acc abs_acc(const Acc& v) {
    if constexpr (std::is_same_v<Acc, Wide>) return boost::multiprecision::abs(v);
    else return v < 0 ? -v : v;
}

bool fits_int64(const Instance& g) { return bits_needed(g.scale_bits, g.n) <= 63; }

template <class Acc>
std::vector<Acc> acc_values(const std::vector<Wide>& values) {
    std::vector<Acc> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        if constexpr (std::is_same_v<Acc, Wide>) out.push_back(v);
        else out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

SignVector vector_from_mask(int n, std::uint64_t minus_mask) {
    SignVector x(n);  // all +1
    for (std::uint64_t m = minus_mask; m; m &= m - 1) x.flip(std::countr_zero(m));
    return x;
}

// Visit all 2^(n-1) canonical sign patterns (x_0 = +1) in Gray order with
// incremental sums.  minus_mask bit i set means x_i = -1.
template <class Acc, class Visit>
void gray_enumerate(const std::vector<Acc>& q, Visit&& visit) {
    int n = static_cast<int>(q.size());
    std::vector<Acc> twice(n);
    Acc s = 0;
    for (int i = 0; i < n; ++i) {
        s += q[i];
        twice[i] = q[i] + q[i];
    }
    std::uint64_t mask = 0;
    visit(s, mask);
    std::uint64_t states = n >= 1 ? 1ull << (n - 1) : 1;
    for (std::uint64_t c = 1; c < states; ++c) {
        int i = std::countr_zero(c) + 1;
        std::uint64_t bit = 1ull << i;
        if (mask & bit) s += twice[i];
        else s -= twice[i];
        mask ^= bit;
        visit(s, mask);
    }
}

template <class Acc>
SolveResult brute_force_impl(const Instance& g) {
    auto q = acc_values<Acc>(g.values);
    Acc best = 0;
    std::uint64_t best_mask = 0;
    bool first = true;
    gray_enumerate<Acc>(q, [&](const Acc& s, std::uint64_t mask) {
        Acc a = abs_acc(s);
        if (first || a < best) {
            best = a;
            best_mask = mask;
            first = false;
        }
    });
    SolveResult r;
    r.x = vector_from_mask(g.n, best_mask);
    r.disc_q = Wide(best);
    r.energy = energy_from_disc(g, r.disc_q);
    r.work = g.n >= 1 ? 1ull << (g.n - 1) : 1;
    return r;
}

template <class Acc>
struct HalfEntry {
    Acc sum;
    std::uint32_t pat;  // bit k set: coordinate lo+k is -1
};

// All 2^(hi-lo) signed sums of q[lo..hi), in deterministic pattern order.
template <class Acc>
std::vector<HalfEntry<Acc>> half_sums(const std::vector<Acc>& q, int lo, int hi) {
    std::vector<HalfEntry<Acc>> out{{Acc(0), 0}};
    for (int i = lo; i < hi; ++i) {
        size_t sz = out.size();
        out.resize(2 * sz);
        std::uint32_t bit = 1u << (i - lo);
        for (size_t j = 0; j < sz; ++j) {
            out[sz + j].sum = out[j].sum - q[i];
            out[sz + j].pat = out[j].pat | bit;
            out[j].sum += q[i];
        }
    }
    return out;
}

template <class Acc>
void sort_halves(std::vector<HalfEntry<Acc>>& v) {
    std::sort(v.begin(), v.end(), [](const HalfEntry<Acc>& a, const HalfEntry<Acc>& b) {
        if (a.sum != b.sum) return a.sum < b.sum;
        return a.pat < b.pat;
    });
}

struct MitmBest {
    Wide best_abs;
    std::uint64_t pat;  // over the free coordinates, bit k set = minus
    std::uint64_t work;
};

// Exact min over sign patterns of |offset + sum_k (+-q[k])|.
template <class Acc>
MitmBest mitm_minimize_impl(const std::vector<Acc>& q, const Acc& offset) {
    int m = static_cast<int>(q.size());
    int ml = m / 2;
    auto left = half_sums(q, 0, ml);
    auto right = half_sums(q, ml, m);
    sort_halves(left);

    bool first = true;
    Acc best = 0;
    std::uint64_t best_pat = 0;
    auto consider = [&](const Acc& s, const HalfEntry<Acc>& le, const HalfEntry<Acc>& re) {
        Acc a = abs_acc(s);
        if (first || a < best) {
            best = a;
            best_pat = static_cast<std::uint64_t>(le.pat) |
                       (static_cast<std::uint64_t>(re.pat) << ml);
            first = false;
        }
    };
    for (const auto& re : right) {
        Acc target = -offset - re.sum;
        auto it = std::lower_bound(left.begin(), left.end(), target,
                                   [](const HalfEntry<Acc>& e, const Acc& t) { return e.sum < t; });
        if (it != left.end()) consider(offset + it->sum + re.sum, *it, re);
        if (it != left.begin()) {
            auto p = std::prev(it);
            consider(offset + p->sum + re.sum, *p, re);
        }
    }
    return {Wide(best), best_pat, (std::uint64_t(1) << ml) + right.size()};
}

MitmBest mitm_minimize(const Instance& g, const std::vector<Wide>& q, const Wide& offset) {
    if (fits_int64(g))
        return mitm_minimize_impl<std::int64_t>(acc_values<std::int64_t>(q),
                                                static_cast<std::int64_t>(offset));
    return mitm_minimize_impl<Wide>(q, offset);
}

template <class Acc>
BigInt count_solutions_impl(const Instance& g, const Acc& t) {
    int n = g.n;
    int nl = n / 2;
    auto q = acc_values<Acc>(g.values);
    std::vector<Acc> left, right;
    for (const auto& e : half_sums(q, 0, nl)) left.push_back(e.sum);
    for (const auto& e : half_sums(q, nl, n)) right.push_back(e.sum);
    std::sort(left.begin(), left.end());
    BigInt total = 0;
    for (const Acc& r : right) {
        auto lo = std::lower_bound(left.begin(), left.end(), -t - r);
        auto hi = std::upper_bound(left.begin(), left.end(), t - r);
        total += static_cast<std::uint64_t>(hi - lo);
    }
    return total;
}

template <class Acc>
std::vector<SignVector> list_solutions_impl(const Instance& g, const Acc& t, std::uint64_t cap) {
    int n = g.n;
    int nl = n / 2;
    auto q = acc_values<Acc>(g.values);
    auto left = half_sums(q, 0, nl);
    auto right = half_sums(q, nl, n);
    sort_halves(left);
    std::vector<SignVector> out;
    for (const auto& re : right) {
        auto lo = std::lower_bound(left.begin(), left.end(), -t - re.sum,
                                   [](const HalfEntry<Acc>& e, const Acc& v) { return e.sum < v; });
        for (auto it = lo; it != left.end() && it->sum <= t - re.sum; ++it) {
            std::uint64_t pat = static_cast<std::uint64_t>(it->pat) |
                                (static_cast<std::uint64_t>(re.pat) << nl);
            if (pat & 1) continue;  // canonical half only: x_0 = +1
            if (out.size() >= cap)
                throw CapError("solution listing exceeds cap " + std::to_string(cap));
            out.push_back(vector_from_mask(n, pat));
        }
    }
    return out;
}

// Magnitude view with sign restoration: solve over a_i = |q_i|, then
// x_i = y_i * sign(q_i) so that x_i q_i = y_i a_i.
SignVector restore_signs(const Instance& g, const std::vector<int>& y) {
    SignVector x(g.n);
    for (int i = 0; i < g.n; ++i) {
        int s = g.values[i] < 0 ? -y[i] : y[i];
        x.set(i, s > 0);
    }
    return x;
}

}  // namespace

const Caps& caps() {
    static const Caps c = caps_from_env();
    return c;
}

SolveResult brute_force(const Instance& g) {
    Timer timer;
    if (g.n < 1) throw SchemaError("brute_force requires n >= 1");
    if (g.n > caps().bf_max_n)
        throw CapError("brute_force cap exceeded: n=" + std::to_string(g.n) +
                       " > " + std::to_string(caps().bf_max_n));
    SolveResult r = fits_int64(g) ? brute_force_impl<std::int64_t>(g) : brute_force_impl<Wide>(g);
    r.elapsed_ms = timer.ms();
    return r;
}

SolveResult mitm_min(const Instance& g) {
    Timer timer;
    if (g.n < 1) throw SchemaError("mitm_min requires n >= 1");
    if (g.n > caps().mitm_max_n)
        throw CapError("mitm cap exceeded: n=" + std::to_string(g.n) +
                       " > " + std::to_string(caps().mitm_max_n));
    MitmBest best = mitm_minimize(g, g.values, Wide(0));
    SolveResult r;
    SignVector x = vector_from_mask(g.n, best.pat);
    r.x = x.is_plus(0) ? x : x.negated();
    r.disc_q = best.best_abs;
    r.energy = energy_from_disc(g, r.disc_q);
    r.work = best.work;
    r.elapsed_ms = timer.ms();
    if (boost::multiprecision::abs(inner(g, r.x)) != r.disc_q)
        throw InternalError("mitm reconstruction mismatch");
    return r;
}

EnumResult enumerate_solutions(const Instance& g, EnergyLevel lvl, std::uint64_t cap) {
    if (g.n > caps().enum_max_n)
        throw CapError("enumerate_solutions cap exceeded: n=" + std::to_string(g.n));
    if (cap < 1) throw SchemaError("enumerate_solutions requires cap >= 1");
    Wide t = threshold_q(g, lvl);
    EnumResult out;
    auto run = [&](auto acc_tag) {
        using Acc = decltype(acc_tag);
        auto q = acc_values<Acc>(g.values);
        Acc ta;
        if constexpr (std::is_same_v<Acc, Wide>) ta = t;
        else ta = static_cast<std::int64_t>(t);
        gray_enumerate<Acc>(q, [&](const Acc& s, std::uint64_t mask) {
            if (out.truncated || abs_acc(s) > ta) return;
            if (out.solutions.size() >= cap) {
                out.truncated = true;
                return;
            }
            out.solutions.push_back(vector_from_mask(g.n, mask));
        });
    };
    if (fits_int64(g)) run(std::int64_t{});
    else run(Wide{});
    return out;
}

BigInt count_solutions_mitm(const Instance& g, EnergyLevel lvl) {
    if (g.n > caps().mitm_max_n)
        throw CapError("count_solutions_mitm cap exceeded: n=" + std::to_string(g.n));
    Wide t = threshold_q(g, lvl);
    if (fits_int64(g)) return count_solutions_impl<std::int64_t>(g, static_cast<std::int64_t>(t));
    return count_solutions_impl<Wide>(g, t);
}

std::vector<SignVector> list_solutions_mitm(const Instance& g, EnergyLevel lvl, std::uint64_t cap) {
    if (g.n > caps().mitm_max_n)
        throw CapError("list_solutions_mitm cap exceeded: n=" + std::to_string(g.n));
    Wide t = threshold_q(g, lvl);
    if (fits_int64(g)) return list_solutions_impl<std::int64_t>(g, static_cast<std::int64_t>(t), cap);
    return list_solutions_impl<Wide>(g, t, cap);
}

SolveResult greedy_adjacent(const Instance& g) {
    Timer timer;
    if (g.n < 1) throw SchemaError("greedy_adjacent requires n >= 1");
    int n = g.n;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<Wide> a(n);
    for (int i = 0; i < n; ++i) a[i] = boost::multiprecision::abs(g.values[i]);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a[i] > a[j]; });

    // Phase 1: adjacent-pair differences; odd leftover stands alone.
    struct Diff {
        Wide d;
        int big, small;  // small = -1 for a leftover singleton
    };
    std::vector<Diff> diffs;
    for (int k = 0; k + 1 < n; k += 2)
        diffs.push_back({a[order[k]] - a[order[k + 1]], order[k], order[k + 1]});
    if (n % 2 == 1) diffs.push_back({a[order[n - 1]], order[n - 1], -1});

    // Phase 2: largest-first greedy on the differences, ties to +.
    std::vector<int> idx(diffs.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return diffs[i].d > diffs[j].d; });
    Wide total = 0;
    std::vector<int> y(n, 1);
    for (int i : idx) {
        int sigma = total > 0 ? -1 : +1;
        total += sigma * diffs[i].d;
        y[diffs[i].big] = sigma;
        if (diffs[i].small >= 0) y[diffs[i].small] = -sigma;
    }

    SolveResult r;
    r.x = restore_signs(g, y);
    r.disc_q = boost::multiprecision::abs(inner(g, r.x));
    if (r.disc_q != boost::multiprecision::abs(total))
        throw InternalError("greedy sign propagation mismatch");
    r.energy = energy_from_disc(g, r.disc_q);
    r.work = static_cast<std::uint64_t>(n);
    r.elapsed_ms = timer.ms();
    return r;
}

SolveResult karmarkar_karp(const Instance& g) {
    Timer timer;
    if (g.n < 1) throw SchemaError("karmarkar_karp requires n >= 1");
    int n = g.n;

    struct Node {
        Wide value;
        int big = -1, small = -1;  // children; leaves have none
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    struct QEntry {
        Wide value;
        std::uint64_t order;  // insertion order; equal magnitudes pop FIFO
        int node;
    };
    auto cmp = [](const QEntry& a, const QEntry& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.order > b.order;
    };
    std::priority_queue<QEntry, std::vector<QEntry>, decltype(cmp)> pq(cmp);
    std::uint64_t order = 0;
    for (int i = 0; i < n; ++i) {
        nodes.push_back({boost::multiprecision::abs(g.values[i]), -1, -1});
        pq.push({nodes[i].value, order++, i});
    }
    for (int step = 0; step + 1 < n; ++step) {
        QEntry a = pq.top(); pq.pop();
        QEntry b = pq.top(); pq.pop();
        nodes.push_back({a.value - b.value, a.node, b.node});
        pq.push({nodes.back().value, order++, static_cast<int>(nodes.size()) - 1});
    }
    int root = pq.top().node;
    Wide survivor = pq.top().value;

    // Two-color the constraint forest: big child inherits the sign, small
    // child gets the opposite.
    std::vector<int> y(n, 1);
    std::vector<std::pair<int, int>> stack{{root, +1}};
    while (!stack.empty()) {
        auto [id, sigma] = stack.back();
        stack.pop_back();
        if (nodes[id].big < 0) {
            y[id] = sigma;
        } else {
            stack.push_back({nodes[id].big, sigma});
            stack.push_back({nodes[id].small, -sigma});
        }
    }

    SolveResult r;
    r.x = restore_signs(g, y);
    r.disc_q = boost::multiprecision::abs(inner(g, r.x));
    if (r.disc_q != survivor)
        throw InternalError("karmarkar_karp two-coloring mismatch");
    r.energy = energy_from_disc(g, r.disc_q);
    r.work = static_cast<std::uint64_t>(n);
    r.elapsed_ms = timer.ms();
    return r;
}

SolveResult restricted_hybrid(const Instance& g, int j_size) {
    Timer timer;
    int n = g.n;
    if (j_size < 4 || j_size > std::min(n, 30))
        throw SchemaError("hybrid j_size must lie in [4, min(n, 30)]");

    Wide c = 0;
    SignVector x(n);
    std::uint64_t work = 0;
    if (j_size < n) {
        Instance tail;
        tail.n = n - j_size;
        tail.scale_bits = g.scale_bits;
        tail.dist = g.dist;
        tail.seed = g.seed;
        tail.values.assign(g.values.begin() + j_size, g.values.end());
        SolveResult kk = karmarkar_karp(tail);
        c = inner(tail, kk.x);
        for (int i = 0; i < tail.n; ++i) x.set(j_size + i, kk.x.is_plus(i));
        work += kk.work;
    }
    std::vector<Wide> head(g.values.begin(), g.values.begin() + j_size);
    MitmBest best = mitm_minimize(g, head, c);
    for (int k = 0; k < j_size; ++k) x.set(k, !(best.pat >> k & 1));
    work += best.work;

    SolveResult r;
    r.x = x;
    r.disc_q = boost::multiprecision::abs(inner(g, r.x));
    if (r.disc_q != best.best_abs)
        throw InternalError("hybrid recombination mismatch");
    r.energy = energy_from_disc(g, r.disc_q);
    r.work = work;
    r.elapsed_ms = timer.ms();
    return r;
}

LocalImproveResult local_improve(const Instance& g, const std::vector<double>& y, double r) {
    Timer timer;
    if (static_cast<int>(y.size()) != g.n) throw SchemaError("local_improve y length mismatch");
    if (r < 0) throw SchemaError("local_improve requires r >= 0");
    int n = g.n;
    LocalImproveResult out;
    out.z.resize(n);
    for (int i = 0; i < n; ++i) out.z[i] = std::clamp(y[i], -1.0, 1.0);

    double r2 = r * r;
    // Per-coordinate cost of the near and far sign.
    std::vector<double> near_cost(n), far_cost(n);
    std::vector<int> near_sign(n);
    for (int i = 0; i < n; ++i) {
        double cp = (out.z[i] - 1.0) * (out.z[i] - 1.0);
        double cm = (out.z[i] + 1.0) * (out.z[i] + 1.0);
        // sign(0) = -1: at z_i = 0 both costs are 1; prefer -1 first.
        if (cp < cm) {
            near_cost[i] = cp; far_cost[i] = cm; near_sign[i] = +1;
        } else {
            near_cost[i] = cm; far_cost[i] = cp; near_sign[i] = -1;
        }
    }
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(),
                     [&](int a, int b) { return near_cost[a] > near_cost[b]; });
    std::vector<double> suffix_min(n + 1, 0.0);
    for (int k = n - 1; k >= 0; --k) suffix_min[k] = suffix_min[k + 1] + near_cost[ord[k]];

    if (suffix_min[0] >= r2) {
        out.interior = true;
        out.res.elapsed_ms = timer.ms();
        return out;
    }

    SignVector cur(n);
    SignVector best_x(n);
    Wide best_abs = 0;
    bool have_best = false;
    std::uint64_t visits = 0;

    // DFS over coordinates (largest mandatory cost first), nearest sign
    // first, pruning on the squared-distance budget.
    auto dfs = [&](auto&& self, int k, double cost, const Wide& s) -> void {
        if (++visits > caps().ball_work)
            throw CapError("local_improve ball enumeration work cap exceeded");
        if (k == n) {
            Wide a = boost::multiprecision::abs(s);
            if (!have_best || a < best_abs ||
                (a == best_abs && cur.lex_less(best_x))) {
                best_abs = a;
                best_x = cur;
                have_best = true;
            }
            return;
        }
        int i = ord[k];
        for (int attempt = 0; attempt < 2; ++attempt) {
            int sgn = attempt == 0 ? near_sign[i] : -near_sign[i];
            double c = attempt == 0 ? near_cost[i] : far_cost[i];
            if (cost + c + suffix_min[k + 1] >= r2) {
                if (attempt == 0) continue;  // far sign can't be cheaper
                break;
            }
            cur.set(i, sgn > 0);
            self(self, k + 1, cost + c, sgn > 0 ? s + g.values[i] : s - g.values[i]);
        }
    };
    dfs(dfs, 0, 0.0, Wide(0));

    if (!have_best) {
        out.interior = true;
        out.res.elapsed_ms = timer.ms();
        return out;
    }
    out.res.x = best_x;
    out.res.disc_q = best_abs;
    out.res.energy = energy_from_disc(g, best_abs);
    out.res.work = visits;
    out.res.elapsed_ms = timer.ms();
    return out;
}

namespace {

bool parse_suffix_int(const std::string& s, int& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

bool valid_solver_name(const std::string& name) {
    if (name == "bf" || name == "mitm" || name == "greedy" || name == "kk") return true;
    if (name.rfind("hybrid:", 0) == 0) {
        int j;
        return parse_suffix_int(name.substr(7), j) && j >= 4;
    }
    if (name.rfind("improve:", 0) == 0) {
        try {
            size_t pos;
            double r = std::stod(name.substr(8), &pos);
            return pos == name.size() - 8 && r >= 0;
        } catch (...) {
            return false;
        }
    }
    return false;
}

SolveResult solve_by_name(const std::string& name, const Instance& g) {
    if (name == "bf") return brute_force(g);
    if (name == "mitm") return mitm_min(g);
    if (name == "greedy") return greedy_adjacent(g);
    if (name == "kk") return karmarkar_karp(g);
    if (name.rfind("hybrid:", 0) == 0) {
        int j;
        if (!parse_suffix_int(name.substr(7), j))
            throw SchemaError("bad hybrid solver spec '" + name + "'");
        return restricted_hybrid(g, j);
    }
    if (name.rfind("improve:", 0) == 0) {
        double r = std::stod(name.substr(8));
        SolveResult kk = karmarkar_karp(g);
        std::vector<double> y(g.n);
        for (int i = 0; i < g.n; ++i) y[i] = kk.x.sign(i);
        LocalImproveResult li = local_improve(g, y, r);
        if (li.interior) return kk;  // empty ball: keep the unimproved point
        return li.res;
    }
    throw SchemaError("unknown solver name '" + name + "'");
}

}  // namespace npplab
