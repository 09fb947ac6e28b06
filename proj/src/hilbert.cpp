#include "entdyn/hilbert.hpp"

#include <algorithm>

namespace entdyn {

CompositeSpace::CompositeSpace(std::vector<int> d) : dims(std::move(d)) {
    if (dims.empty() || dims.size() > 3)
        throw DimensionMismatch("composite space must have 1 to 3 slots");
    for (int dim : dims)
        if (dim < 1) throw DimensionMismatch("subsystem dimension must be >= 1");
}

int CompositeSpace::total() const {
    int t = 1;
    for (int d : dims) t *= d;
    return t;
}

Bipartition Bipartition::of(const CompositeSpace& space, std::vector<int> left_slots) {
    std::sort(left_slots.begin(), left_slots.end());
    Bipartition p;
    for (int s = 0; s < space.slots(); ++s) {
        if (std::binary_search(left_slots.begin(), left_slots.end(), s))
            p.left.push_back(s);
        else
            p.right.push_back(s);
    }
    if (p.left.size() != left_slots.size())
        throw IndexOutOfRange("bipartition slot outside the space");
    if (p.left.empty() || p.right.empty())
        throw DimensionMismatch("both sides of a bipartition must be nonempty");
    return p;
}

int flat_index(const std::vector<int>& multi, const CompositeSpace& space) {
    if (static_cast<int>(multi.size()) != space.slots())
        throw DimensionMismatch("multi-index length does not match the space");
    int flat = 0;
    for (int s = 0; s < space.slots(); ++s) {
        if (multi[s] < 0 || multi[s] >= space.dims[s])
            throw IndexOutOfRange("multi-index component outside its dimension");
        flat = flat * space.dims[s] + multi[s];
    }
    return flat;
}

std::vector<int> multi_index(int flat, const CompositeSpace& space) {
    if (flat < 0 || flat >= space.total()) throw IndexOutOfRange("flat index outside the space");
    std::vector<int> multi(space.slots());
    for (int s = space.slots() - 1; s >= 0; --s) {
        multi[s] = flat % space.dims[s];
        flat /= space.dims[s];
    }
    return multi;
}

ComplexMatrix embed(const ComplexMatrix& op, int slot, const CompositeSpace& space) {
    if (slot < 0 || slot >= space.slots()) throw IndexOutOfRange("embed slot outside the space");
    if (op.n != space.dims[slot])
        throw DimensionMismatch("operator dimension does not match the slot");
    ComplexMatrix r = ComplexMatrix::identity(1);
    for (int s = 0; s < space.slots(); ++s)
        r = kron(r, s == slot ? op : ComplexMatrix::identity(space.dims[s]));
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const CompositeSpace& space,
                            const std::vector<int>& keep) {
    if (m.n != space.total()) throw DimensionMismatch("matrix does not live on the space");
    if (keep.empty()) throw EmptyKeepSet("partial trace must keep at least one slot");
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (int s : kept)
        if (s < 0 || s >= space.slots()) throw IndexOutOfRange("kept slot outside the space");

    std::vector<int> traced;
    for (int s = 0; s < space.slots(); ++s)
        if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

    std::vector<int> kept_dims, traced_dims;
    for (int s : kept) kept_dims.push_back(space.dims[s]);
    for (int s : traced) traced_dims.push_back(space.dims[s]);
    CompositeSpace out_space(kept_dims.empty() ? std::vector<int>{1} : kept_dims);
    int traced_total = 1;
    for (int d : traced_dims) traced_total *= d;

    ComplexMatrix out(out_space.total());
    std::vector<int> full_row(space.slots()), full_col(space.slots());
    for (int r = 0; r < out.n; ++r) {
        std::vector<int> rk = multi_index(r, out_space);
        for (int c = 0; c < out.n; ++c) {
            std::vector<int> ck = multi_index(c, out_space);
            complex sum = 0;
            for (int d = 0; d < traced_total; ++d) {
                int rest = d;
                for (int s = static_cast<int>(traced.size()) - 1; s >= 0; --s) {
                    full_row[traced[s]] = rest % traced_dims[s];
                    full_col[traced[s]] = full_row[traced[s]];
                    rest /= traced_dims[s];
                }
                for (std::size_t s = 0; s < kept.size(); ++s) {
                    full_row[kept[s]] = rk[s];
                    full_col[kept[s]] = ck[s];
                }
                sum += m.at(flat_index(full_row, space), flat_index(full_col, space));
            }
            out.at(r, c) = sum;
        }
    }
    return out;
}

std::vector<std::size_t> partial_transpose_table(const CompositeSpace& space,
                                                 const Bipartition& part, TransposeSide side) {
    const std::vector<int>& swap_slots = (side == TransposeSide::left) ? part.left : part.right;
    const int n = space.total();
    std::vector<std::size_t> table(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        std::vector<int> rm = multi_index(r, space);
        for (int c = 0; c < n; ++c) {
            std::vector<int> cm = multi_index(c, space);
            std::vector<int> rs = rm, cs = cm;
            for (int s : swap_slots) std::swap(rs[s], cs[s]);
            table[static_cast<std::size_t>(flat_index(rs, space)) * n + flat_index(cs, space)] =
                static_cast<std::size_t>(r) * n + c;
        }
    }
    return table;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const CompositeSpace& space,
                                const Bipartition& part, TransposeSide side) {
    if (m.n != space.total()) throw DimensionMismatch("matrix does not live on the space");
    std::vector<std::size_t> table = partial_transpose_table(space, part, side);
    ComplexMatrix out(m.n);
    for (std::size_t k = 0; k < table.size(); ++k) out.a[k] = m.a[table[k]];
    return out;
}

}  // namespace entdyn
