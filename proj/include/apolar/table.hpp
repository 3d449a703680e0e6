#ifndef APOLAR_TABLE_HPP
#define APOLAR_TABLE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <apolar/form.hpp>
#include <apolar/tangent.hpp>

namespace apolar
{

// One (d, n, normal form) cell of the singular-locus table for sigma_3(v_d(P^n)).
struct TableCell {
    unsigned d = 0;
    unsigned n = 0;
    OrbitClass kind = OrbitClass::Fermat;
    std::string form;
    Smoothness predicted = Smoothness::smooth;
    Smoothness computed = Smoothness::smooth;
    std::optional<std::size_t> conormal_dim;
    long long expected_codim = 0;
    std::optional<ConormalFormula> formula;
    std::optional<std::string> error;

    bool matches() const noexcept
    {
        return !error && predicted == computed;
    }
};

// Verdict the classification predicts at the normal form of `kind`:
// sigma_3 is smooth off sigma_2, except along the degenerate locus when d = 4, n >= 3.
inline Smoothness predicted_smoothness(OrbitClass kind, unsigned d, unsigned n)
{
    if (d == 3) {
        return Smoothness::d3_classified;
    }
    if (kind == OrbitClass::DegenerateBinary && d == 4 && n >= 3) {
        return Smoothness::singular;
    }
    return Smoothness::smooth;
}

// Normal forms applicable at degree d, in table order.
inline std::vector<OrbitClass> table_kinds(unsigned d)
{
    std::vector<OrbitClass> kinds{OrbitClass::Fermat, OrbitClass::Unmixed, OrbitClass::Mixed};
    if (d >= 4) {
        kinds.push_back(OrbitClass::DegenerateBinary);
    }
    return kinds;
}

inline TableCell evaluate_cell(unsigned d, unsigned n, OrbitClass kind)
{
    TableCell cell;
    cell.d = d;
    cell.n = n;
    cell.kind = kind;
    cell.predicted = predicted_smoothness(kind, d, n);
    try {
        const Form f = canonical_form(kind, d, n);
        cell.form = format_form(f);
        const auto rep = smoothness_at(f);
        cell.computed = rep.verdict;
        cell.conormal_dim = rep.conormal_dim;
        cell.expected_codim = rep.expected_codim;
        cell.formula = rep.formula_used;
    } catch (const std::exception &e) {
        cell.error = e.what();
    }
    return cell;
}

// Evaluates every cell with d in [d_lo, d_hi], n in [n_lo, n_hi]. Cells are independent;
// up to `jobs` threads work on them and the result is in (d, n, kind) order regardless.
inline std::vector<TableCell> verify_table(unsigned d_lo, unsigned d_hi, unsigned n_lo, unsigned n_hi,
                                           unsigned jobs = 1)
{
    struct Slot {
        unsigned d, n;
        OrbitClass kind;
    };
    std::vector<Slot> slots;
    for (unsigned d = d_lo; d <= d_hi; ++d) {
        for (unsigned n = n_lo; n <= n_hi; ++n) {
            for (auto kind : table_kinds(d)) {
                slots.push_back({d, n, kind});
            }
        }
    }
    std::vector<TableCell> cells(slots.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < slots.size(); i = next++) {
            cells[i] = evaluate_cell(slots[i].d, slots[i].n, slots[i].kind);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(slots.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    return cells;
}

} // namespace apolar

#endif
