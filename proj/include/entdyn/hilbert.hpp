#pragma once

#include <vector>

#include "entdyn/matrix.hpp"

namespace entdyn {

// ---- errors ----

struct EmptyKeepSet : std::invalid_argument {
    explicit EmptyKeepSet(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

// ---- composite-space bookkeeping ----

// Ordered subsystem dimensions; 1 to 3 slots in this artifact.
struct CompositeSpace {
    std::vector<int> dims;

    CompositeSpace() = default;
    explicit CompositeSpace(std::vector<int> d);

    int slots() const { return static_cast<int>(dims.size()); }
    int total() const;
};

// Left/right slot sets partitioning {0..slots-1}; both nonempty.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    static Bipartition of(const CompositeSpace& space, std::vector<int> left_slots);
};

enum class TransposeSide { left, right };

// Mixed-radix flat index, leftmost slot most significant.
int flat_index(const std::vector<int>& multi, const CompositeSpace& space);
std::vector<int> multi_index(int flat, const CompositeSpace& space);

// I (x) ... (x) op (x) ... (x) I with op at `slot`.
ComplexMatrix embed(const ComplexMatrix& op, int slot, const CompositeSpace& space);

// Reduced matrix over the kept slots (original slot order); trace preserved.
ComplexMatrix partial_trace(const ComplexMatrix& m, const CompositeSpace& space,
                            const std::vector<int>& keep);

// Transposes the indices of the chosen side of the bipartition; exact
// (index permutation, no arithmetic).
ComplexMatrix partial_transpose(const ComplexMatrix& m, const CompositeSpace& space,
                                const Bipartition& part, TransposeSide side);

// Entry permutation realizing partial_transpose: out.a[k] = in.a[table[k]].
// Precomputed once and reused by scan loops.
std::vector<std::size_t> partial_transpose_table(const CompositeSpace& space,
                                                 const Bipartition& part, TransposeSide side);

}  // namespace entdyn
