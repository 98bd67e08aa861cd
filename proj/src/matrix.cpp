#include "ipr/matrix.hpp"

#include "ipr/error.hpp"

#include <algorithm>
#include <set>

namespace ipr {

namespace {

constexpr long kRowCap = 1L << 20;

}  // namespace

CompressedTuple::CompressedTuple(std::vector<Rational> values) {
    if (values.empty()) throw Error(Errc::InvalidInput, "compressed tuple cannot be empty");
    for (const auto& v : values) {
        if (v == 0) throw Error(Errc::InvalidInput, "compressed tuple entries are nonzero");
    }
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] == values[i - 1])
            throw Error(Errc::InvalidInput, "adjacent equal entries in compressed tuple");
    }
    entries = std::move(values);
}

SparseMatrix::SparseMatrix(Kind kind, int cols) : kind_(kind), cols_(cols) {
    if (cols <= 0) throw Error(Errc::InvalidInput, "matrix needs at least one column");
}

void SparseMatrix::append_row(Row row) {
    int prev = -1;
    for (const auto& [col, val] : row) {
        if (col <= prev) throw Error(Errc::InvalidInput, "row entries must be sorted by column");
        if (col >= cols_) throw Error(Errc::InvalidInput, "column index out of range");
        if (val == 0) throw Error(Errc::InvalidInput, "stored entries must be nonzero");
        prev = col;
    }
    rows_.push_back(std::move(row));
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense, Kind kind) {
    if (dense.empty() || dense.front().empty())
        throw Error(Errc::InvalidInput, "dense matrix must be nonempty");
    SparseMatrix m(kind, static_cast<int>(dense.front().size()));
    for (const auto& drow : dense) {
        if (drow.size() != dense.front().size())
            throw Error(Errc::InvalidInput, "ragged dense matrix");
        Row row;
        for (size_t j = 0; j < drow.size(); ++j) {
            if (drow[j] != 0) row.emplace_back(static_cast<int>(j), drow[j]);
        }
        m.append_row(std::move(row));
    }
    return m;
}

Rational SparseMatrix::entry(int i, int j) const {
    for (const auto& [col, val] : rows_[static_cast<size_t>(i)]) {
        if (col == j) return val;
        if (col > j) break;
    }
    return Rational(0);
}

bool SparseMatrix::has_zero_row() const {
    for (const auto& r : rows_) {
        if (r.empty()) return true;
    }
    return false;
}

std::vector<Rational> SparseMatrix::apply(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw Error(Errc::InvalidInput, "vector length does not match column count");
    std::vector<Rational> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) {
        Rational sum(0);
        for (const auto& [col, val] : row) sum += val * x[static_cast<size_t>(col)];
        out.push_back(std::move(sum));
    }
    return out;
}

namespace {

SparseMatrix build_fs(int size) {
    if (size < 1) throw Error(Errc::InvalidInput, "fs needs size >= 1");
    if (size > 20 || ((1L << size) - 1) > kRowCap)
        throw Error(Errc::SizeTooLarge, "fs(" + std::to_string(size) + ") exceeds the row cap");
    SparseMatrix m(SparseMatrix::Kind::Finite, size);
    for (long mask = 1; mask < (1L << size); ++mask) {
        SparseMatrix::Row row;
        for (int j = 0; j < size; ++j) {
            if (mask & (1L << j)) row.emplace_back(j, Rational(1));
        }
        m.append_row(std::move(row));
    }
    m.set_family("fs");
    return m;
}

// Rows of the Milliken-Taylor matrix for tuple a over n columns: one row per
// block pattern F_1 < F_2 < ... < F_m (nonempty finite sets), entry a_t on
// the columns of F_t. Blocks are sets, so a column may rejoin the latest
// block after a gap; once block t+1 starts, block t is frozen. Enumerated in
// lexicographic label-vector order.
void mt_rows_rec(const CompressedTuple& a, int n, int pos, size_t started,
                 SparseMatrix::Row& current, SparseMatrix& out, long& produced) {
    size_t m = a.size();
    if (pos == n) {
        if (started == m) {
            if (++produced > kRowCap) throw Error(Errc::SizeTooLarge, "mt family exceeds the row cap");
            out.append_row(current);
        }
        return;
    }
    // label 0: skip this column
    mt_rows_rec(a, n, pos + 1, started, current, out, produced);
    // add the column to the latest block
    if (started >= 1) {
        current.emplace_back(pos, a.entries[started - 1]);
        mt_rows_rec(a, n, pos + 1, started, current, out, produced);
        current.pop_back();
    }
    // start the next block here
    if (started < m) {
        current.emplace_back(pos, a.entries[started]);
        mt_rows_rec(a, n, pos + 1, started + 1, current, out, produced);
        current.pop_back();
    }
}

SparseMatrix build_mt(const CompressedTuple& a, int size) {
    if (size < static_cast<int>(a.size()))
        throw Error(Errc::InvalidInput, "mt needs at least one column per tuple entry");
    SparseMatrix m(SparseMatrix::Kind::OmegaTruncated, size);
    SparseMatrix::Row current;
    long produced = 0;
    mt_rows_rec(a, size, 0, 0, current, m, produced);
    m.set_family("mt");
    m.set_truncation(size);
    return m;
}

SparseMatrix build_ex16(int size) {
    if (size < 1) throw Error(Errc::InvalidInput, "ex16 needs size >= 1");
    if (size > 4096) throw Error(Errc::SizeTooLarge, "ex16 truncation too deep");
    SparseMatrix m(SparseMatrix::Kind::OmegaTruncated, size);
    m.append_row({{0, Rational(1)}});
    for (int k = 1; k < size; ++k) {
        m.append_row({{0, pow2(k)}, {k, Rational(1)}});
    }
    m.set_family("ex16");
    m.set_truncation(size);
    return m;
}

SparseMatrix build_ex17(int size) {
    if (size < 1) throw Error(Errc::InvalidInput, "ex17 needs size >= 1");
    if (size > 4096) throw Error(Errc::SizeTooLarge, "ex17 truncation too deep");
    SparseMatrix m(SparseMatrix::Kind::OmegaTruncated, size + 1);
    for (int n = 0; n < size; ++n) {
        m.append_row({{0, Rational(1, 2 * n + 1)}, {n + 1, Rational(-1)}});
    }
    m.set_family("ex17");
    m.set_truncation(size);
    return m;
}

SparseMatrix build_identity(int size) {
    if (size < 1) throw Error(Errc::InvalidInput, "identity needs size >= 1");
    if (size > kRowCap) throw Error(Errc::SizeTooLarge, "identity truncation too deep");
    SparseMatrix m(SparseMatrix::Kind::OmegaTruncated, size);
    for (int i = 0; i < size; ++i) m.append_row({{i, Rational(1)}});
    m.set_family("identity");
    m.set_truncation(size);
    return m;
}

}  // namespace

SparseMatrix build_family(const std::string& family, int size, const std::vector<Rational>& params) {
    if (family == "fs") return build_fs(size);
    if (family == "schur") {
        if (size != 2)
            throw Error(Errc::InvalidInput, "schur is the fixed 3x2 specimen; size must be 2");
        SparseMatrix m = build_fs(2);
        m.set_family("schur");
        return m;
    }
    if (family == "mt") {
        if (params.empty()) throw Error(Errc::InvalidInput, "mt needs tuple coefficients");
        return build_mt(CompressedTuple(params), size);
    }
    if (family == "ex16") return build_ex16(size);
    if (family == "ex17") return build_ex17(size);
    if (family == "identity") return build_identity(size);
    throw Error(Errc::UnknownFamily, "no family named '" + family + "'");
}

CompressedTuple compress(const std::vector<Rational>& row) {
    std::vector<Rational> kept;
    for (const auto& v : row) {
        if (v == 0) continue;
        if (kept.empty() || kept.back() != v) kept.push_back(v);
    }
    if (kept.empty()) throw Error(Errc::AllZero, "row has no nonzero entry");
    return CompressedTuple(std::move(kept));
}

namespace {

// First-entries scan over an explicit row list: every row nonzero, and all
// rows leading in the same column share one positive first entry.
void first_entries_scan(const std::vector<SparseMatrix::Row>& rows, ClassifyReport& report) {
    report.first_entries = true;
    report.monic = true;
    for (const auto& row : rows) {
        if (row.empty()) {
            report.first_entries = false;
            report.monic = false;
            report.notes.push_back("zero row present");
            return;
        }
        const auto& [col, val] = row.front();
        if (val <= 0) {
            report.first_entries = false;
            report.notes.push_back("negative leading entry in column " + std::to_string(col));
        }
        auto it = report.first_entry_by_column.find(col);
        if (it == report.first_entry_by_column.end()) {
            report.first_entry_by_column.emplace(col, val);
        } else if (it->second != val) {
            report.first_entries = false;
            report.notes.push_back("conflicting first entries in column " + std::to_string(col));
        }
        if (val != 1) report.monic = false;
    }
    if (!report.first_entries) report.monic = false;
}

BlockReport classify_block(const SparseMatrix& slice) {
    BlockReport br;
    std::set<SparseMatrix::Row> distinct;
    for (int i = 0; i < slice.rows(); ++i) {
        if (!slice.row_is_zero(i)) distinct.insert(slice.row(i));
    }
    br.nonzero_rows = static_cast<int>(distinct.size());
    if (distinct.empty()) {
        br.empty = true;
        return br;
    }
    ClassifyReport sub;
    first_entries_scan({distinct.begin(), distinct.end()}, sub);
    br.first_entries = sub.first_entries;
    br.monic = sub.monic;
    return br;
}

}  // namespace

ClassifyReport classify_matrix(const SparseMatrix& m, const std::optional<std::vector<int>>& breakpoints) {
    if (m.kind() == SparseMatrix::Kind::OmegaTruncated && !breakpoints)
        throw Error(Errc::MissingBreakpoints, "omega-truncated matrix needs a breakpoint sequence");
    ClassifyReport report;
    first_entries_scan(m.row_data(), report);
    if (breakpoints) {
        SegmentedReport seg;
        seg.structure_valid = true;
        const auto& bp = *breakpoints;
        if (bp.empty() || bp.front() != 0) {
            seg.structure_valid = false;
            seg.violations.push_back("breakpoints must start at 0");
        }
        for (size_t i = 1; i < bp.size(); ++i) {
            if (bp[i] <= bp[i - 1]) {
                seg.structure_valid = false;
                seg.violations.push_back("breakpoints must be strictly increasing");
                break;
            }
        }
        if (!bp.empty() && bp.back() != m.cols()) {
            seg.structure_valid = false;
            seg.violations.push_back("final breakpoint must equal the column truncation");
        }
        if (seg.structure_valid) {
            SegmentedSpec spec = SegmentedSpec::from_matrix(m, bp);
            seg.first_entries_all = true;
            seg.monic_all = true;
            for (const auto& slice : spec.slices) {
                BlockReport br = classify_block(slice);
                if (!br.empty && !br.first_entries) seg.first_entries_all = false;
                if (!br.empty && !br.monic) seg.monic_all = false;
                seg.blocks.push_back(br);
            }
        }
        report.segmented = std::move(seg);
    }
    return report;
}

SparseMatrix diagonal_sum(const SparseMatrix& a, const SparseMatrix& b) {
    auto kind = (a.kind() == SparseMatrix::Kind::Finite && b.kind() == SparseMatrix::Kind::Finite)
                    ? SparseMatrix::Kind::Finite
                    : SparseMatrix::Kind::OmegaTruncated;
    SparseMatrix out(kind, a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) out.append_row(a.row(i));
    for (int i = 0; i < b.rows(); ++i) {
        SparseMatrix::Row row;
        for (const auto& [col, val] : b.row(i)) row.emplace_back(col + a.cols(), val);
        out.append_row(std::move(row));
    }
    if (kind == SparseMatrix::Kind::OmegaTruncated) {
        int ta = a.truncation().value_or(a.rows());
        int tb = b.truncation().value_or(b.rows());
        out.set_truncation(std::max(ta, tb));
    }
    return out;
}

SegmentedSpec SegmentedSpec::from_matrix(const SparseMatrix& m, std::vector<int> breakpoints) {
    if (breakpoints.size() < 2 || breakpoints.front() != 0)
        throw Error(Errc::InvalidInput, "breakpoints must start at 0 and name at least one block");
    for (size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= breakpoints[i - 1])
            throw Error(Errc::InvalidInput, "breakpoints must be strictly increasing");
    }
    if (breakpoints.back() != m.cols())
        throw Error(Errc::InvalidInput, "final breakpoint must equal the column count");
    SegmentedSpec spec;
    spec.breakpoints = std::move(breakpoints);
    for (size_t n = 0; n + 1 < spec.breakpoints.size(); ++n) {
        int lo = spec.breakpoints[n];
        int hi = spec.breakpoints[n + 1];
        SparseMatrix slice(SparseMatrix::Kind::Finite, hi - lo);
        for (int i = 0; i < m.rows(); ++i) {
            SparseMatrix::Row row;
            for (const auto& [col, val] : m.row(i)) {
                if (col >= lo && col < hi) row.emplace_back(col - lo, val);
            }
            slice.append_row(std::move(row));
        }
        spec.slices.push_back(std::move(slice));
    }
    return spec;
}

SegmentedSpec SegmentedSpec::from_diagonal_blocks(const std::vector<SparseMatrix>& blocks) {
    if (blocks.empty()) throw Error(Errc::InvalidInput, "need at least one block");
    int total_rows = 0;
    for (const auto& b : blocks) total_rows += b.rows();
    SegmentedSpec spec;
    spec.breakpoints.push_back(0);
    int row_offset = 0;
    for (const auto& b : blocks) {
        spec.breakpoints.push_back(spec.breakpoints.back() + b.cols());
        SparseMatrix slice(SparseMatrix::Kind::Finite, b.cols());
        for (int i = 0; i < total_rows; ++i) {
            if (i >= row_offset && i < row_offset + b.rows()) {
                slice.append_row(b.row(i - row_offset));
            } else {
                slice.append_row({});
            }
        }
        row_offset += b.rows();
        spec.slices.push_back(std::move(slice));
    }
    return spec;
}

SparseMatrix SegmentedSpec::prefix(int depth) const {
    if (depth < 0 || depth >= block_count())
        throw Error(Errc::InvalidInput, "prefix depth out of range");
    SparseMatrix out(SparseMatrix::Kind::Finite, breakpoints[static_cast<size_t>(depth) + 1]);
    for (int i = 0; i < row_count(); ++i) {
        SparseMatrix::Row row;
        for (int n = 0; n <= depth; ++n) {
            for (const auto& [col, val] : slices[static_cast<size_t>(n)].row(i))
                row.emplace_back(col + breakpoints[static_cast<size_t>(n)], val);
        }
        out.append_row(std::move(row));
    }
    return out;
}

}  // namespace ipr
