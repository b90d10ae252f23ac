#include "glq/bessel.hpp"

#include <map>

#include "glq/errors.hpp"

namespace glq {

BesselEvaluator::BesselEvaluator(const CharacterTable& table, int row, Fel psi_twist)
    : table_(&table), row_(row), twist_(psi_twist)
{
    if (!table.is_generic(row))
        throw NotGenericError("Bessel function requires a generic representation");
    if (psi_twist == 0) throw NotGenericError("Bessel function requires a nontrivial psi");
    w_long_ = weyl_long(table.field(), table.n());
}

cxd BesselEvaluator::monomial_value(const Mat& m) const
{
    const std::uint64_t key = m.pack();
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    const AdditiveCharacter psi_inv = psi().inverse();
    KahanSum acc;
    std::uint64_t count = 0;
    for_each_subgroup_element(table_->field(), table_->n(), SubgroupKind::upper_unipotent, {},
                              [&](const Mat& u) {
                                  acc.add(psi_on_U(psi_inv, u) * table_->value_at(row_, m * u));
                                  ++count;
                              });
    const cxd v = acc.value() / static_cast<double>(count);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(key, v);
    return v;
}

cxd BesselEvaluator::value(const Mat& g) const
{
    const DoubleCosetForm form = double_coset_canonical(g);
    const AdditiveCharacter p = psi();
    return p(form.psi_left) * p(form.psi_right) * monomial_value(form.monomial);
}

cxd BesselEvaluator::value_tilde(const Mat& g) const
{
    return value(w_long_ * g.dual_involution());
}

const BesselEvaluator& bessel_evaluator(const CharacterTable& table, int row, Fel psi_twist)
{
    static std::mutex mu;
    static std::map<std::tuple<const CharacterTable*, int, Fel>,
                    std::unique_ptr<BesselEvaluator>>
        cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(&table, row, psi_twist);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache
                 .emplace(key, std::make_unique<BesselEvaluator>(table, row, psi_twist))
                 .first;
    return *it->second;
}

cxd bessel_value(IrrepHandle pi, Fel psi_twist, const Mat& g)
{
    return bessel_evaluator(pi, psi_twist).value(g);
}

Mat two_block_matrix(const Field& F, int n, Fel c)
{
    Mat m(F, n);
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = F.one();
    m(n - 1, 0) = c;
    return m;
}

Mat two_block_matrix_flipped(const Field& F, int n, Fel c)
{
    Mat m(F, n);
    m(0, n - 1) = c;
    for (int i = 1; i < n; ++i) m(i, i - 1) = F.one();
    return m;
}

Mat three_block_matrix(const Field& F, int n, Fel c, Fel cprime)
{
    Mat m(F, n);
    m(0, n - 1) = F.neg(cprime);
    for (int i = 1; i + 1 < n; ++i) m(i, i) = F.one();
    m(n - 1, 0) = c;
    return m;
}

std::vector<BesselTableRow> bessel_table(IrrepHandle pi, Fel psi_twist, BesselDomain domain)
{
    const BesselEvaluator& ev = bessel_evaluator(pi, psi_twist);
    const Field& F = pi.table->field();
    const int n = pi.table->n();
    auto snap = [](cxd v) { return std::abs(v) < 1e-9 ? cxd{0.0, 0.0} : v; };
    std::vector<BesselTableRow> rows;
    auto emit = [&](const Mat& g) {
        rows.push_back({g, double_coset_canonical(g).monomial, snap(ev.value(g))});
    };
    switch (domain) {
        case BesselDomain::two_block:
            if (n < 2) throw PreconditionError("two-block domain needs n >= 2");
            for (Fel c = 1; c < F.q(); ++c) emit(two_block_matrix(F, n, c));
            return rows;
        case BesselDomain::three_block:
            if (n < 3) throw PreconditionError("three-block domain needs n >= 3");
            for (Fel c = 1; c < F.q(); ++c)
                for (Fel cp = 1; cp < F.q(); ++cp) emit(three_block_matrix(F, n, c, cp));
            return rows;
        case BesselDomain::full:
            if (pi.table->group_order() > 100000)
                throw EnvelopeExceededError("full Bessel table limited to |G| <= 1e5");
            for_each_group_element(F, n, emit);
            return rows;
    }
    throw Error("unknown Bessel domain");
}

}  // namespace glq
