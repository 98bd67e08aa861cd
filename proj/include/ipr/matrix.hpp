#pragma once

#include "ipr/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ipr {

// Compressed sequence c(a): zeros deleted, maximal runs of equal adjacent
// entries collapsed to a single entry.
struct CompressedTuple {
    std::vector<Rational> entries;

    explicit CompressedTuple(std::vector<Rational> values);

    size_t size() const { return entries.size(); }
};

// Row-sparse exact matrix. Finite matrices are what they claim to be;
// omega-truncated matrices are finite prefixes of an infinite family and
// carry the declared truncation depth.
class SparseMatrix {
  public:
    enum class Kind { Finite, OmegaTruncated };
    using Entry = std::pair<int, Rational>;   // (column, value), value != 0
    using Row = std::vector<Entry>;           // sorted by column

    SparseMatrix(Kind kind, int cols);

    void append_row(Row row);  // validates ordering, zero entries, bounds

    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense,
                                   Kind kind = Kind::Finite);

    Kind kind() const { return kind_; }
    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    const Row& row(int i) const { return rows_[static_cast<size_t>(i)]; }
    const std::vector<Row>& row_data() const { return rows_; }

    Rational entry(int i, int j) const;
    bool row_is_zero(int i) const { return rows_[static_cast<size_t>(i)].empty(); }
    bool has_zero_row() const;

    std::vector<Rational> apply(std::span<const Rational> x) const;

    const std::optional<std::string>& family() const { return family_; }
    void set_family(std::string tag) { family_ = std::move(tag); }
    const std::optional<int>& truncation() const { return truncation_; }
    void set_truncation(int depth) { truncation_ = depth; }

    bool operator==(const SparseMatrix& other) const {
        return kind_ == other.kind_ && cols_ == other.cols_ && rows_ == other.rows_;
    }

  private:
    Kind kind_;
    int cols_;
    std::vector<Row> rows_;
    std::optional<std::string> family_;
    std::optional<int> truncation_;
};

// Families: fs, mt (params = tuple coefficients), ex16, ex17, schur, identity.
SparseMatrix build_family(const std::string& family, int size,
                          const std::vector<Rational>& params = {});

CompressedTuple compress(const std::vector<Rational>& row);

struct BlockReport {
    int nonzero_rows = 0;
    bool empty = false;
    bool first_entries = false;
    bool monic = false;
};

struct SegmentedReport {
    bool structure_valid = false;               // breakpoints well formed and tiling the columns
    std::vector<std::string> violations;
    std::vector<BlockReport> blocks;
    bool first_entries_all = false;             // every block empty or first-entries
    bool monic_all = false;
};

struct ClassifyReport {
    bool first_entries = false;
    bool monic = false;
    std::vector<std::string> notes;
    std::map<int, Rational> first_entry_by_column;
    std::optional<SegmentedReport> segmented;
};

// breakpoints are required for omega-truncated input (MissingBreakpoints).
ClassifyReport classify_matrix(const SparseMatrix& m,
                               const std::optional<std::vector<int>>& breakpoints = std::nullopt);

SparseMatrix diagonal_sum(const SparseMatrix& a, const SparseMatrix& b);

// A segmented decomposition: column blocks of one underlying matrix, cut at
// breakpoints alpha_0 = 0 < alpha_1 < ... All slices keep the full row count.
struct SegmentedSpec {
    std::vector<int> breakpoints;       // size = blocks + 1, first 0, last = total cols
    std::vector<SparseMatrix> slices;   // uniform row count

    static SegmentedSpec from_matrix(const SparseMatrix& m, std::vector<int> breakpoints);
    // Stacks finite blocks block-diagonally; slice n is zero outside its own rows.
    static SegmentedSpec from_diagonal_blocks(const std::vector<SparseMatrix>& blocks);

    int block_count() const { return static_cast<int>(slices.size()); }
    int row_count() const { return slices.empty() ? 0 : slices.front().rows(); }
    int total_cols() const { return breakpoints.back(); }

    // B_depth = (M_0 M_1 ... M_depth) as one matrix.
    SparseMatrix prefix(int depth) const;
};

}  // namespace ipr
