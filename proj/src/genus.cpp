#include "hq/genus.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "hq/error.hpp"

namespace hq {

namespace {

using CountMap = std::map<std::pair<int64_t, ElementType>, int64_t>;

// Exact division that aborts on a nonzero remainder.  Every closed-form
// census term is integral by a divisibility argument; a remainder here means
// the formula was transcribed wrong.
BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    if (den == 0 || num % den != 0)
        throw InternalInconsistency(std::string("closed-form census: ") + what +
                                    " is not an integer");
    return num / den;
}

int64_t to_count(const BigInt& v, const char* what) {
    if (v < 0 || v > BigInt(INT64_MAX))
        throw Error(std::string("closed-form census: ") + what + " out of int64 range");
    return v.convert_to<int64_t>();
}

}  // namespace

int64_t TypeCensus::total() const {
    int64_t sum = 0;
    for (const auto& [key, cnt] : counts) sum += cnt;
    return sum;
}

int64_t TypeCensus::by_type(ElementType t) const {
    int64_t sum = 0;
    for (const auto& [key, cnt] : counts)
        if (key.second == t) sum += cnt;
    return sum;
}

TypeCensus census(const Subgroup& g, int jobs) {
    if (jobs < 1) throw Error("census: jobs must be >= 1");
    const int64_t n = g.order();

    TypeCensus out;
    out.group_order = n;

    const int workers = static_cast<int>(std::min<int64_t>(jobs, std::max<int64_t>(n, 1)));

    // Each worker classifies a contiguous index range with its own Classifier
    // (the caches are not thread-safe) and its own count map; the maps merge
    // into one ordered map afterwards, so the result does not depend on the
    // worker count or on scheduling.
    std::vector<CountMap> partial(workers);
    std::vector<std::exception_ptr> failures(workers);

    auto run = [&](int w) {
        try {
            Classifier cl(g.form());
            const int64_t lo = n * w / workers;
            const int64_t hi = n * (w + 1) / workers;
            for (int64_t i = lo; i < hi; ++i) {
                GroupElement e = g.element(i);
                if (is_identity(e)) continue;
                RamRecord r = cl.ram_contribution(e);
                ++partial[w][{r.order, r.type}];
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    for (const auto& m : partial)
        for (const auto& [key, cnt] : m) out.counts[key] += cnt;

    if (out.total() != n - 1)
        throw InternalInconsistency("census covered " + std::to_string(out.total()) +
                                    " elements, expected " + std::to_string(n - 1));
    return out;
}

GenusReport genus_from_census(const HermitianForm& f, const std::string& label,
                              const TypeCensus& c) {
    if (c.group_order < 1) throw Error("genus: census has no group order");

    const int64_t q = f.tower().q();

    GenusReport r;
    r.label = label;
    r.q = q;
    r.group_order = c.group_order;

    BigInt delta = 0;
    for (const auto& [key, cnt] : c.counts) {
        const int64_t i = type_contribution(key.second, q);
        r.rows.push_back({key.first, key.second, cnt, i, cnt * i});
        delta += BigInt(cnt) * i;
    }
    r.delta = to_count(delta, "delta");

    // Riemann-Hurwitz: 2g(H_q) - 2 = q^2 - q - 2, so
    // g = 1 + (q^2 - q - 2 - delta) / (2 |G|).
    const BigInt num = BigInt(q) * q - q - 2 - delta;
    r.genus = BigRational(num, 2 * BigInt(c.group_order)) + 1;
    r.integral = boost::multiprecision::denominator(r.genus) == 1;
    r.negative = r.integral && r.genus < 0;
    return r;
}

GenusReport quotient_genus(const Subgroup& g, int jobs) {
    return genus_from_census(g.form(), g.label(), census(g, jobs));
}

TypeCensus expected_census_psu(int64_t qbar) {
    if (qbar < 2 || qbar > 1000)
        throw Error("closed-form PSU census: q must be in [2, 1000]");
    if ((qbar + 1) % 3 != 0)
        throw Error("closed-form PSU census: requires 3 | (q + 1), got q = " +
                    std::to_string(qbar));

    const BigInt q = qbar;
    const BigInt q2 = q * q, q3 = q2 * q;

    // |PSU(3,q)| = q^3 (q^3 + 1) (q^2 - 1) / 3 when 3 | (q + 1).
    const BigInt order = exact_div(q3 * (q3 + 1) * (q2 - 1), 3, "group order");

    // One conjugate elation class per curve point; q - 1 elations each.
    const BigInt n_c = (q - 1) * (q3 + 1);
    // Remaining p-singular elements of the Sylow normalizers fixing a point.
    const BigInt n_d = (q3 - q) * (q3 + 1);
    // Homologies: one center per outer point, (q+1)/3 - 1 nontrivial each.
    const BigInt n_a = ((q + 1) / 3 - 1) * (q2 * q2 - q3 + q2);
    // Chord stabilizer tori minus their homology part, halved by the swap.
    const BigInt n_b2 =
        ((q2 - 1) / 3 - (q + 1) / 3) * exact_div((q3 + 1) * q3, 2, "B2 term");
    // Singer tori: one triangle per orbit of size 3.
    const BigInt n_b3 = ((q2 - q + 1) / 3 - 1) *
                        exact_div(q3 * (q + 1) * (q + 1) * (q - 1), 3, "B3 term");
    // Elation-homology products with p-part of order exactly p.
    const BigInt n_e = (q - 1) * ((q + 1) / 3 - 1) * (q3 + 1) * q2;

    // Everything else fixes a self-polar triangle pointwise.
    const BigInt n_b1 = (order - 1) - (n_c + n_d + n_a + n_b2 + n_b3 + n_e);
    const BigInt b1_closed = exact_div(
        q3 * (q - 1) * (q2 - q + 1) * (q2 - q + 4), 18, "B1 closed form");
    if (n_b1 != b1_closed)
        throw InternalInconsistency(
            "closed-form PSU census: B1 remainder disagrees with its closed form");

    TypeCensus c;
    c.group_order = to_count(order, "group order");
    const std::pair<ElementType, BigInt> classes[] = {
        {ElementType::A, n_a},   {ElementType::B1, n_b1}, {ElementType::B2, n_b2},
        {ElementType::B3, n_b3}, {ElementType::C, n_c},   {ElementType::D, n_d},
        {ElementType::E, n_e},
    };
    for (const auto& [t, cnt] : classes) {
        const int64_t v = to_count(cnt, type_name(t));
        if (v > 0) c.counts[{0, t}] = v;
    }
    return c;
}

}  // namespace hq
