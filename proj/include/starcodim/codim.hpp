#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starcodim/algebra.hpp"
#include "starcodim/monomials.hpp"
#include "starcodim/rank.hpp"

namespace starcodim {

struct ComputeOptions {
    BasisMode basis_mode = BasisMode::Full;
    RankMethod rank_method = RankMethod::Exact;
    int degree_cap = kDefaultDegreeCap;
    // Proof-carrying shortcuts; each is sound for every input (see README).
    bool use_vanishing_shortcut = true;  // typed product-span chains
    bool use_component_split = true;     // direct-sum blocks assemble per block
    bool use_tensor_reduction = true;    // nilpotent_tensor cells reduce to the base
    long long assignment_limit = 400000000;  // refuse larger honest enumerations
    size_t modular_certify_entry_limit = 200000;
    int jobs = 1;
};

// Substitution of decomposed basis vectors: x_i <- symmetric[sym[i-1]],
// y_j <- skew[skew[j-1]]. Enumeration is odometer order over
// (x_1..x_k, y_1..y_m) with y_m spinning fastest.
struct Assignment {
    std::vector<int> sym, skew;
};

// Caches everything evaluation needs: the star decomposition, unit-product
// fast tables when applicable, direct-sum parts, tensor base context.
class EvalContext {
public:
    explicit EvalContext(AlgebraPtr algebra);

    const AlgebraWithInvolution& algebra() const { return *algebra_; }
    AlgebraPtr algebra_ptr() const { return algebra_; }
    const StarDecomposition& decomposition() const { return decomp_; }
    int p() const { return decomp_.p(); }
    int q() const { return decomp_.q(); }

    bool has_fast_tables() const { return fast_; }
    const EvalContext* tensor_base() const { return tensor_base_.get(); }
    const std::vector<std::shared_ptr<EvalContext>>& sum_parts() const { return sum_parts_; }

    // Span of all values of (k, m)-multidegree monomials, as an echelon basis.
    // Empty span proves cell rank 0.
    const std::vector<SparseVec>& product_span(int k, int m) const;
    bool cell_vanishes(int k, int m) const { return product_span(k, m).empty(); }

    // Decomposed basis vectors in ambient coordinates.
    const std::vector<SparseVec>& symmetric_sparse() const { return sym_sparse_; }
    const std::vector<SparseVec>& skew_sparse() const { return skew_sparse_; }

    // Exposed for the assembler / tests.
    struct Fast {
        std::vector<int32_t> idx;   // d*d; -1 means zero product
        std::vector<int8_t> sgn;    // aligned with idx
        std::vector<int32_t> sym_idx, skew_idx;
        std::vector<int8_t> sym_sgn, skew_sgn;
    };
    const Fast& fast_tables() const { return fast_tables_; }

private:
    AlgebraPtr algebra_;
    StarDecomposition decomp_;
    bool fast_ = false;
    Fast fast_tables_;
    std::shared_ptr<EvalContext> tensor_base_;
    std::vector<std::shared_ptr<EvalContext>> sum_parts_;
    std::vector<SparseVec> sym_sparse_, skew_sparse_;
    mutable std::map<std::pair<int, int>, std::vector<SparseVec>> span_cache_;
};

// Value of w under the assignment, as ambient coordinates.
SparseVec evaluate_monomial(const EvalContext& ctx, const MultilinearMonomial& w,
                            const Assignment& a);

struct EvalColumn {
    long long assignment;  // odometer index
    int coord;             // ambient coordinate
    SparseVec entries;     // (row, value), rows in basis order
};

struct EvaluationMatrix {
    int k = 0, m = 0, p = 0, q = 0;
    BasisMode mode = BasisMode::Full;
    long rows = 0;
    long long assignment_count = 0;
    Integer columns_before_drop;  // p^k q^m (p+q)
    std::vector<EvalColumn> cols;
    std::vector<SparseVec> column_vectors() const;
};

// Honest assembly over all p^k q^m assignments (no structure shortcuts);
// identically-zero columns are dropped. Throws ResourceError past the limits.
EvaluationMatrix assemble_matrix(const EvalContext& ctx, int k, int m,
                                 const ComputeOptions& opts);

struct CellResult {
    int k = 0, m = 0;
    long value = 0;
    // "assembled", "vanishing", "tensor", "blocks", "empty", "no-elements"
    std::string method;
    RankReport rank;
};

CellResult partial_codimension_cell(const EvalContext& ctx, int k, int m,
                                    const ComputeOptions& opts);
long partial_codimension(const AlgebraWithInvolution& a, int k, int m,
                         const ComputeOptions& opts = {});

struct TotalCodim {
    int n = 0;
    Integer total;  // sum over k of binom(n, k) * c*_{k, n-k}
    std::vector<CellResult> cells;
};

TotalCodim total_codimension_cells(const EvalContext& ctx, int n, const ComputeOptions& opts);
Integer total_codimension(const AlgebraWithInvolution& a, int n,
                          const ComputeOptions& opts = {});

struct CodimSequence {
    std::string algebra_name;
    std::vector<TotalCodim> by_degree;  // n = 1..n_max
};

CodimSequence codim_sequence(const EvalContext& ctx, int n_max, const ComputeOptions& opts);

// Fills every lazy cache a cell computation with k+m <= n_max may touch, so
// cells can then run concurrently against a const context.
void warm_caches(const EvalContext& ctx, int n_max, const ComputeOptions& opts);

/// Left null space of the full-basis evaluation matrix: the degree-(k, m)
// multilinear identities, as an RREF-convention coefficient basis.
struct IdentitySpace {
    MonomialBasis basis;
    std::vector<std::vector<Rational>> vectors;
};

IdentitySpace identity_space(const EvalContext& ctx, int k, int m, const ComputeOptions& opts);

struct IdentityCheck {
    bool holds = true;
    std::optional<Assignment> counterexample;  // first violating, odometer order
    SparseVec value;                           // evaluation at the counterexample
};

IdentityCheck is_identity(const EvalContext& ctx, const MonomialBasis& basis,
                          const std::vector<Rational>& coeffs, const ComputeOptions& opts);

struct SubsetCheck {
    bool contained = true;
    std::optional<std::vector<Rational>> violating;  // identity of A failing on B
    std::optional<Assignment> counterexample;        // assignment in B
};

// Do the degree-(k, m) identities of A hold in B?
SubsetCheck identity_subset_check(const EvalContext& A, const EvalContext& B, int k, int m,
                                  const ComputeOptions& opts);

/// Lower-bound certificate: rows = chosen monomials, columns = evaluations at
// chosen ambient-basis assignments. rank <= c*_{k,m} by multilinearity.
struct WitnessAssignment {
    std::vector<int> x_to_basis, y_to_basis;  // ambient basis indices
};

struct WitnessCertificate {
    std::string algebra_name;
    int k = 0, m = 0;
    std::vector<MultilinearMonomial> monomials;
    std::vector<WitnessAssignment> assignments;
    long rank = 0;
};

WitnessCertificate witness_lower_bound(const EvalContext& ctx,
                                       std::vector<MultilinearMonomial> monomials,
                                       std::vector<WitnessAssignment> assignments);

// Re-evaluates the certificate against the algebra; ok iff the recomputed
// rank equals the declared one.
struct CertificateCheck {
    long recomputed = 0;
    bool ok = false;
};
CertificateCheck verify_certificate(const EvalContext& ctx, const WitnessCertificate& cert);

/// Text format: header lines (algebra, signature), one `monomial <grammar>`
// line each, `assign x1=<label> ... y1=<label> ...` lines, final `rank <r>`.
void save_certificate(const WitnessCertificate& cert, const AlgebraWithInvolution& a,
                      std::ostream& out);
WitnessCertificate load_certificate(std::istream& in, const AlgebraWithInvolution& a,
                                    const std::string& source_name = "<stream>");

}  // namespace starcodim
