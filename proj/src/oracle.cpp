#include "homalg/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace homalg {

namespace {

// cyclic orders of the generators, torsion only
std::vector<long> cyclic_orders(const FgModule& m) {
    std::vector<long> out;
    if (m.coeff.is_field()) {
        // F_p^r is (Z/p)^r as an abelian group
        for (long i = 0; i < m.free_rank; ++i) out.push_back(m.coeff.p.get_si());
        return out;
    }
    if (m.free_rank > 0) throw TooLarge("oracle: module is infinite");
    for (auto& d : m.torsion) out.push_back(d.get_si());
    return out;
}

long table_order(const std::vector<long>& orders) {
    long total = 1;
    for (long d : orders) {
        total *= d;
        if (total > 10000) throw TooLarge("oracle: module order above 10^4");
    }
    return total;
}

std::vector<std::vector<long>> enumerate(const std::vector<long>& orders) {
    std::vector<std::vector<long>> out;
    out.push_back(std::vector<long>(orders.size(), 0));
    for (size_t i = 0; i < orders.size(); ++i) {
        std::vector<std::vector<long>> next;
        for (auto& e : out)
            for (long v = 0; v < orders[i]; ++v) {
                auto x = e;
                x[i] = v;
                next.push_back(x);
            }
        out = std::move(next);
    }
    return out;
}

// invariant factors of a finite abelian group from its order-counting
// statistics: for each prime p, #\{x : p^j x = 0\} determines the partition
// of p-exponents
std::vector<long> invariant_factors_from_elements(
    const std::vector<std::vector<long>>& elems, const std::vector<long>& orders) {
    long size = static_cast<long>(elems.size());
    auto killed_count = [&](long d) {
        long c = 0;
        for (auto& e : elems) {
            bool zero = true;
            for (size_t i = 0; i < e.size(); ++i)
                if ((d * e[i]) % orders[i] != 0) {
                    zero = false;
                    break;
                }
            if (zero) ++c;
        }
        return c;
    };
    std::map<long, std::vector<long>> exponents;  // prime -> partition, descending
    long rest = size;
    for (long p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        std::vector<long> logs;  // log_p of #\{x : p^j x = 0\}, j = 0,1,...
        logs.push_back(0);
        long pj = 1;
        while (true) {
            pj *= p;
            long c = killed_count(pj), lg = 0;
            while (c > 1) {
                c /= p;
                ++lg;
            }
            logs.push_back(lg);
            if (logs[logs.size() - 1] == logs[logs.size() - 2]) break;
        }
        std::vector<long> part;
        for (size_t j = 1; j < logs.size(); ++j) {
            long ge_j = logs[j] - logs[j - 1];  // #\{e_i >= j\}
            while (static_cast<long>(part.size()) < ge_j) part.push_back(0);
            for (long t = 0; t < ge_j; ++t) part[t] += 1;
        }
        exponents[p] = part;
        while (rest % p == 0) rest /= p;
    }
    size_t slots = 0;
    for (auto& [p, part] : exponents) slots = std::max(slots, part.size());
    std::vector<long> factors(slots, 1);  // descending
    for (auto& [p, part] : exponents)
        for (size_t i = 0; i < part.size(); ++i)
            for (long t = 0; t < part[i]; ++t) factors[i] *= p;
    std::reverse(factors.begin(), factors.end());
    return factors;
}

FgModule integral_module(std::vector<long> factors) {
    FgModule out = FgModule::zero(Coefficients::integers());
    for (long d : factors)
        if (d > 1) out.torsion.push_back(d);
    return out;
}

}  // namespace

ElementTable element_table(const FgModule& m) {
    auto orders = cyclic_orders(m);
    table_order(orders);
    return {m, enumerate(orders)};
}

FgModule brute_hom(const FgModule& m, const FgModule& n) {
    require_same(m.coeff, n.coeff);
    if (m.coeff.is_field()) {
        // linear maps form a p^(dim m * dim n)-element space
        return FgModule::free(m.coeff, m.free_rank * n.free_rank);
    }
    auto src = cyclic_orders(m);
    auto tgt = cyclic_orders(n);
    table_order(src);
    auto telems = enumerate(tgt);
    // images of generator i must be killed by its order
    std::vector<std::vector<std::vector<long>>> choices;
    for (long d : src) {
        std::vector<std::vector<long>> ok;
        for (auto& y : telems) {
            bool killed = true;
            for (size_t t = 0; t < y.size(); ++t)
                if ((d * y[t]) % tgt[t] != 0) {
                    killed = false;
                    break;
                }
            if (killed) ok.push_back(y);
        }
        choices.push_back(ok);
    }
    // a hom is one image tuple per generator; flatten into residue tuples over
    // the product of the target orders, one copy per source generator
    std::vector<std::vector<long>> homs{{}};
    std::vector<long> homorders;
    for (size_t i = 0; i < choices.size(); ++i) {
        for (long d : tgt) homorders.push_back(d);
        std::vector<std::vector<long>> next;
        for (auto& h : homs)
            for (auto& y : choices[i]) {
                if (next.size() > 10000) throw TooLarge("oracle: hom group above 10^4");
                auto x = h;
                x.insert(x.end(), y.begin(), y.end());
                next.push_back(x);
            }
        homs = std::move(next);
    }
    return integral_module(invariant_factors_from_elements(homs, homorders));
}

std::map<int, long> brute_homology(const ChainComplex& c) {
    if (!c.coefficients().is_field()) throw TooLarge("oracle: prime field only");
    long p = c.coefficients().p.get_si();
    if (p > 7) throw TooLarge("oracle: p above 7");
    long total = 0;
    for (auto& [n, r] : c.ranks()) total += r;
    if (total > 12) throw TooLarge("oracle: total dimension above 12");
    auto rank_of = [&](Mat md) {
        long rows = md.rows(), cols = md.cols();
        std::vector<std::vector<long>> a(rows, std::vector<long>(cols, 0));
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) a[i][j] = ((md(i, j).get_si() % p) + p) % p;
        long rk = 0;
        for (long col = 0; col < cols && rk < rows; ++col) {
            long piv = -1;
            for (long i = rk; i < rows; ++i)
                if (a[i][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(a[rk], a[piv]);
            long inv = 1;
            for (long t = 1; t < p; ++t)
                if ((a[rk][col] * t) % p == 1) inv = t;
            for (long j = 0; j < cols; ++j) a[rk][j] = (a[rk][j] * inv) % p;
            for (long i = 0; i < rows; ++i) {
                if (i == rk || a[i][col] == 0) continue;
                long f = a[i][col];
                for (long j = 0; j < cols; ++j)
                    a[i][j] = ((a[i][j] - f * a[rk][j]) % p + p) % p;
            }
            ++rk;
        }
        return rk;
    };
    std::map<int, long> out;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        long h = c.rank(n) - rank_of(c.diff(n)) - rank_of(c.diff(n + 1));
        if (h != 0) out[n] = h;
    }
    return out;
}

FgModule brute_ext_cyclic(long a, long b, int n) {
    FgModule zero = FgModule::zero(Coefficients::integers());
    if (n != 0 && n != 1) return zero;
    if (n == 0) {
        // Hom(Z/a, Z/b) = annihilator of a inside Z/b
        long count = 0;
        for (long y = 0; y < b; ++y)
            if ((a * y) % b == 0) ++count;
        return count > 1 ? FgModule::cyclic(Coefficients::integers(), count) : zero;
    }
    // Ext^1 = Z/b modulo the image of multiplication by a
    std::vector<bool> image(b, false);
    for (long y = 0; y < b; ++y) image[(a * y) % b] = true;
    long size = 0;
    for (long v = 0; v < b; ++v)
        if (image[v]) ++size;
    long q = b / size;
    return q > 1 ? FgModule::cyclic(Coefficients::integers(), q) : zero;
}

FgModule brute_tor_cyclic(long a, long b, int n) {
    FgModule zero = FgModule::zero(Coefficients::integers());
    if (n != 0 && n != 1) return zero;
    // Z/a tensor Z/b = Z/b modulo multiples of a, same count as Ext^1
    if (n == 0) return brute_ext_cyclic(a, b, 1);
    // Tor_1 = kernel of multiplication by a on Z/b
    long count = 0;
    for (long y = 0; y < b; ++y)
        if ((a * y) % b == 0) ++count;
    return count > 1 ? FgModule::cyclic(Coefficients::integers(), count) : zero;
}

}  // namespace homalg
