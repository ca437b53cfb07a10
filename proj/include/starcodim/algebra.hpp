#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starcodim/rational.hpp"

namespace starcodim {

struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// An involution axiom does not hold (order 2 / anti-automorphism / span split).
struct AxiomError : std::runtime_error {
    explicit AxiomError(const std::string& msg) : std::runtime_error(msg) {}
};

class AlgebraWithInvolution;
using AlgebraPtr = std::shared_ptr<const AlgebraWithInvolution>;

// Marks an algebra produced by nilpotent_tensor(base, order); lets the
// codimension engine reduce cells to the base algebra (see ComputeOptions).
struct TensorTag {
    AlgebraPtr base;
    int order;  // N: products vanish past total degree N
};

// Summand of a direct_sum, occupying ambient indices [offset, offset+dim).
struct SumPart {
    AlgebraPtr part;
    int offset;
};

// Finite-dimensional nonassociative algebra over Q with an involution.
// Structure constants are sparse: products[i*dim+j] is e_i * e_j, absent
// entries are zero. involution[r][c] holds (e_c)* = sum_r involution[r][c] e_r.
class AlgebraWithInvolution {
public:
    AlgebraWithInvolution(std::string name, std::vector<std::string> labels,
                          std::vector<SparseVec> products,
                          std::vector<std::vector<Rational>> involution);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int label_index(const std::string& label) const;  // -1 if absent

    const SparseVec& product(int i, int j) const { return products_[i * dim_ + j]; }
    const std::vector<SparseVec>& products() const { return products_; }
    const std::vector<std::vector<Rational>>& involution() const { return involution_; }

    SparseVec multiply(const SparseVec& u, const SparseVec& v) const;
    SparseVec star(const SparseVec& v) const;

    // xy = yx for all basis pairs.
    bool is_commutative() const;
    // (xy)(zt) = 0 for all basis products.
    bool is_metabelian() const;

    const std::optional<TensorTag>& tensor_tag() const { return tensor_tag_; }
    void set_tensor_tag(TensorTag tag) { tensor_tag_ = std::move(tag); }

    // Non-empty only for algebras built by direct_sum.
    const std::vector<SumPart>& sum_parts() const { return sum_parts_; }
    void set_sum_parts(std::vector<SumPart> parts) { sum_parts_ = std::move(parts); }

    // Partition of basis indices into product/involution-connected components,
    // sorted by smallest member. Assignments mixing components evaluate to 0.
    const std::vector<std::vector<int>>& components() const;

private:
    std::string name_;
    int dim_;
    std::vector<std::string> labels_;
    std::vector<SparseVec> products_;
    std::vector<std::vector<Rational>> involution_;
    std::optional<TensorTag> tensor_tag_;
    std::vector<SumPart> sum_parts_;
    mutable std::optional<bool> commutative_, metabelian_;
    mutable std::vector<std::vector<int>> components_;
};

struct ValidationIssue {
    enum class Kind { InvolutionOrder, AntiAutomorphism, SpanSplit };
    Kind kind;
    int i = -1, j = -1;  // offending basis pair for AntiAutomorphism
    std::string message;
};

// Checks the involution axioms. Structural problems (shape mismatches, bad
// indices) are rejected at construction time, not here.
std::vector<ValidationIssue> validate(const AlgebraWithInvolution& a);

// Echelonized bases of the symmetric / skew eigenspaces, via (id +- *)/2
// projectors and deterministic RREF. Throws AxiomError if validate() fails.
struct StarDecomposition {
    std::vector<std::vector<Rational>> symmetric;  // p vectors, length dim
    std::vector<std::vector<Rational>> skew;       // q vectors
    int p() const { return static_cast<int>(symmetric.size()); }
    int q() const { return static_cast<int>(skew.size()); }
};

StarDecomposition decompose(const AlgebraWithInvolution& a);

// Block-diagonal sum; labels become "<label>@<block>" (1-based).
AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& parts);

// A tensor Q[Z]Z/(Z^{N+1}): basis e_i x Z^s, s = 1..N, labels "<label>.Z<s>".
// (u x Z^s)(v x Z^t) = uv x Z^{s+t} when s+t <= N, else 0; * acts blockwise.
AlgebraPtr nilpotent_tensor(const AlgebraPtr& a, int order);

// New basis f_c = sum_r P[r][c] e_c in old coordinates; P must be invertible.
// The transported involution is revalidated (AxiomError if it fails, which
// cannot happen for genuinely invertible P but is checked per contract).
AlgebraPtr change_basis(const AlgebraWithInvolution& a,
                        const std::vector<std::vector<Rational>>& P);

}  // namespace starcodim
