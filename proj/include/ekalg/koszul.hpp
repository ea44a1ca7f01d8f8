#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ekalg/errors.hpp"
#include "ekalg/linalg.hpp"
#include "ekalg/prime.hpp"

namespace ekalg {

struct VGenerator {
    std::string name;
    int64_t degree = 1;
};

// Word in the letters of V, stored as letter indices. Empty word = unit.
using Word = std::vector<uint32_t>;

// Free associative algebra T(V) on positively graded letters, with degreewise
// word bases cached on demand.
class TensorAlgebra {
  public:
    TensorAlgebra(const Prime& p, std::vector<VGenerator> letters)
        : p_(p), letters_(std::move(letters))
    {
        std::vector<std::string> names;
        for (const auto& v : letters_) {
            if (v.degree < 1)
                throw NonConnective("letter " + v.name + " must have degree >= 1");
            names.push_back(v.name);
        }
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw DuplicateGenerator("duplicate letter name");
    }

    const Prime& prime() const { return p_; }
    size_t letter_count() const { return letters_.size(); }
    const VGenerator& letter(size_t i) const { return letters_.at(i); }

    int64_t word_degree(const Word& w) const
    {
        int64_t d = 0;
        for (uint32_t i : w)
            d += letters_.at(i).degree;
        return d;
    }

    // All words of degree d in lexicographic letter-index order.
    const std::vector<Word>& basis(int64_t d) const
    {
        if (d < 0)
            throw InvalidArgument("negative degree");
        while (static_cast<int64_t>(basis_.size()) <= d) {
            int64_t target = static_cast<int64_t>(basis_.size());
            std::vector<Word> words;
            Word cur;
            build_words(target, cur, words);
            basis_.push_back(std::move(words));
        }
        return basis_[static_cast<size_t>(d)];
    }

    int64_t dim(int64_t d) const { return static_cast<int64_t>(basis(d).size()); }

    int64_t index_of(int64_t d, const Word& w) const
    {
        const auto& bas = basis(d);
        auto it = std::lower_bound(bas.begin(), bas.end(), w);
        if (it == bas.end() || *it != w)
            throw InvalidArgument("word is not in the degree-" + std::to_string(d) + " basis");
        return static_cast<int64_t>(it - bas.begin());
    }

    std::string word_str(const Word& w) const
    {
        if (w.empty())
            return "1";
        std::string s;
        for (uint32_t i : w)
            s += letters_.at(i).name;
        return s;
    }

  private:
    Prime p_;
    std::vector<VGenerator> letters_;
    mutable std::vector<std::vector<Word>> basis_;

    void build_words(int64_t remaining, Word& cur, std::vector<Word>& out) const
    {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (uint32_t i = 0; i < letters_.size(); ++i) {
            if (letters_[i].degree > remaining)
                continue;
            cur.push_back(i);
            build_words(remaining - letters_[i].degree, cur, out);
            cur.pop_back();
        }
    }
};

inline std::vector<Word> tensor_algebra_basis(const TensorAlgebra& T, int64_t d)
{
    return T.basis(d);
}

// Monomial of the free left module on the presentation generators:
// word (x) e_gen.
struct FreeTerm {
    Word word;
    uint32_t gen = 0;

    bool operator==(const FreeTerm& o) const { return gen == o.gen && word == o.word; }
    bool operator<(const FreeTerm& o) const
    {
        return std::tie(gen, word) < std::tie(o.gen, o.word);
    }
};

struct FreeElement {
    std::vector<std::pair<FreeTerm, uint32_t>> terms;
};

// Finitely presented left T(V)-module: cokernel of the relation span inside
// the free module on the generators.
struct ModulePresentation {
    std::vector<VGenerator> generators;  // degree >= 0
    std::vector<FreeElement> relations;  // homogeneous
};

inline ModulePresentation trivial_module(const TensorAlgebra& T)
{
    ModulePresentation P;
    P.generators.push_back({"e", 0});
    for (uint32_t i = 0; i < T.letter_count(); ++i)
        P.relations.push_back({{{FreeTerm{{i}, 0}, 1}}});
    return P;
}

inline ModulePresentation free_module()
{
    ModulePresentation P;
    P.generators.push_back({"e", 0});
    return P;
}

// Reproducible pseudo-random generator: the 64-bit linear congruential step
//   x <- 6364136223846793005 * x + 1442695040888963407   (mod 2^64),
// values drawn as (x >> 33) mod k after stepping.
class Lcg {
  public:
    explicit Lcg(uint64_t seed) : x_(seed) {}

    uint64_t next()
    {
        x_ = 6364136223846793005ull * x_ + 1442695040888963407ull;
        return x_;
    }

    uint64_t draw(uint64_t k) { return (next() >> 33) % k; }

  private:
    uint64_t x_;
};

// Seeded homogeneous presentation: 1-2 generators of degree 0-2, 0-2 relations,
// each relation a dense-ish random combination of the free-module monomials in
// one degree between 1 and 3 above the minimum generator degree.
inline ModulePresentation random_presentation(const TensorAlgebra& T, uint64_t seed)
{
    Lcg rng(seed);
    ModulePresentation P;
    uint64_t n_gens = 1 + rng.draw(2);
    for (uint64_t g = 0; g < n_gens; ++g)
        P.generators.push_back({"e" + std::to_string(g), static_cast<int64_t>(rng.draw(3))});
    uint64_t n_rels = rng.draw(3);
    for (uint64_t r = 0; r < n_rels; ++r) {
        int64_t min_deg = P.generators[0].degree;
        for (const auto& g : P.generators)
            min_deg = std::min(min_deg, g.degree);
        int64_t rel_deg = min_deg + 1 + static_cast<int64_t>(rng.draw(3));
        FreeElement rel;
        for (uint32_t g = 0; g < P.generators.size(); ++g) {
            int64_t wd = rel_deg - P.generators[g].degree;
            if (wd < 0)
                continue;
            for (const auto& w : T.basis(wd)) {
                uint32_t c = static_cast<uint32_t>(rng.draw(T.prime().value()));
                if (c != 0)
                    rel.terms.push_back({FreeTerm{w, g}, c});
            }
        }
        if (!rel.terms.empty())
            P.relations.push_back(std::move(rel));
    }
    return P;
}

// Degreewise materialization of N = F / (relation span): bases of the free
// module, echelon spans of the relations, and reduction to N coordinates.
class ModuleBases {
  public:
    ModuleBases(const TensorAlgebra& T, const ModulePresentation& P, int64_t d_max)
        : T_(&T), P_(&P), d_max_(d_max)
    {
        if (d_max < 0)
            throw InvalidArgument("d_max must be non-negative");
        for (const auto& g : P.generators)
            if (g.degree < 0)
                throw NonConnective("module generator " + g.name + " has negative degree");
        for (const auto& rel : P.relations)
            validate_relation(rel);
        for (int64_t d = 0; d <= d_max; ++d) {
            free_basis_.push_back(enumerate_free(d));
            spans_.emplace_back(T.prime(), static_cast<int64_t>(free_basis_.back().size()));
        }
        for (const auto& rel : P.relations) {
            if (rel.terms.empty())
                continue;
            int64_t rd = term_degree(rel.terms.front().first);
            for (int64_t d = rd; d <= d_max; ++d)
                for (const auto& t : T_->basis(d - rd)) {
                    SparseColumn col;
                    for (const auto& [term, c] : rel.terms) {
                        FreeTerm shifted{prepend(t, term.word), term.gen};
                        col.emplace_back(free_index(d, shifted), c);
                    }
                    spans_[static_cast<size_t>(d)].add(normalize_column(T.prime(), col));
                }
        }
        for (int64_t d = 0; d <= d_max; ++d) {
            std::vector<int64_t> rows;
            for (int64_t r = 0; r < static_cast<int64_t>(free_basis_[static_cast<size_t>(d)].size());
                 ++r)
                if (!spans_[static_cast<size_t>(d)].has_pivot(r))
                    rows.push_back(r);
            n_rows_.push_back(std::move(rows));
        }
    }

    const TensorAlgebra& tensor_algebra() const { return *T_; }
    const ModulePresentation& presentation() const { return *P_; }
    int64_t d_max() const { return d_max_; }

    const std::vector<FreeTerm>& free_basis(int64_t d) const
    {
        return free_basis_.at(static_cast<size_t>(d));
    }
    const std::vector<int64_t>& n_rows(int64_t d) const
    {
        return n_rows_.at(static_cast<size_t>(d));
    }
    int64_t n_dim(int64_t d) const { return static_cast<int64_t>(n_rows(d).size()); }

    int64_t term_degree(const FreeTerm& t) const
    {
        return T_->word_degree(t.word) + P_->generators.at(t.gen).degree;
    }

    int64_t free_index(int64_t d, const FreeTerm& t) const
    {
        const auto& bas = free_basis(d);
        auto it = std::lower_bound(bas.begin(), bas.end(), t);
        if (it == bas.end() || !(*it == t))
            throw DimensionMismatch("free-module monomial outside the degree basis");
        return static_cast<int64_t>(it - bas.begin());
    }

    // N coordinates (positions within n_rows(d)) of a free-module column.
    SparseColumn reduce_to_n(int64_t d, const SparseColumn& free_coords) const
    {
        SparseColumn residual = spans_.at(static_cast<size_t>(d)).reduce(free_coords);
        SparseColumn out;
        const auto& rows = n_rows(d);
        for (const auto& [row, c] : residual) {
            auto it = std::lower_bound(rows.begin(), rows.end(), row);
            out.emplace_back(static_cast<int64_t>(it - rows.begin()), c);
        }
        return out;
    }

    static Word prepend(const Word& prefix, const Word& rest)
    {
        Word out = prefix;
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }

  private:
    const TensorAlgebra* T_;
    const ModulePresentation* P_;
    int64_t d_max_;
    std::vector<std::vector<FreeTerm>> free_basis_;
    std::vector<Echelon> spans_;
    std::vector<std::vector<int64_t>> n_rows_;

    void validate_relation(const FreeElement& rel) const
    {
        if (rel.terms.empty())
            return;
        for (const auto& t : rel.terms)
            if (t.first.gen >= P_->generators.size())
                throw DimensionMismatch("relation references a missing generator");
        int64_t d = term_degree(rel.terms.front().first);
        for (const auto& [term, c] : rel.terms) {
            if (term_degree(term) != d)
                throw InhomogeneousRelation("relation mixes degrees " + std::to_string(d) +
                                            " and " + std::to_string(term_degree(term)));
        }
    }

    std::vector<FreeTerm> enumerate_free(int64_t d) const
    {
        std::vector<FreeTerm> out;
        for (uint32_t g = 0; g < P_->generators.size(); ++g) {
            int64_t wd = d - P_->generators[g].degree;
            if (wd < 0)
                continue;
            for (const auto& w : T_->basis(wd))
                out.push_back({w, g});
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// The length-one complex 0 -> T(V) (x) V (x) N -> T(V) (x) N -> N -> 0 with
//   d1(t (x) v (x) n) = tv (x) n - t (x) (v n),   eps(t (x) n) = t n,
// materialized degreewise. Basis pairs are ordered by word degree descending,
// which makes the tv (x) n entry the minimal row of every d1 column and rank
// computation a single pass.
class KoszulComplex {
  public:
    struct Level {
        int64_t c1_dim = 0;
        int64_t c0_dim = 0;
        int64_t n_dim = 0;
        SparseMatrix d1;   // c0_dim rows, c1_dim columns
        SparseMatrix eps;  // n_dim rows, c0_dim columns
    };

    KoszulComplex(const TensorAlgebra& T, const ModulePresentation& P, int64_t d_max)
        : modules_(T, P, d_max)
    {
        const Prime& p = T.prime();
        for (int64_t d = 0; d <= d_max; ++d) {
            c0_offsets_.push_back(build_c0_offsets(d));
            c1_offsets_.push_back(build_c1_offsets(d));
        }
        for (int64_t d = 0; d <= d_max; ++d) {
            Level level;
            level.c0_dim = c0_offsets_[static_cast<size_t>(d)].total;
            level.c1_dim = c1_offsets_[static_cast<size_t>(d)].total;
            level.n_dim = modules_.n_dim(d);
            level.d1 = SparseMatrix(level.c0_dim, level.c1_dim);
            level.eps = SparseMatrix(level.n_dim, level.c0_dim);
            fill_d1(d, level.d1);
            fill_eps(d, level.eps);
            assert_composite_zero(p, level);
            levels_.push_back(std::move(level));
        }
    }

    const ModuleBases& modules() const { return modules_; }
    int64_t d_max() const { return modules_.d_max(); }
    const Level& level(int64_t d) const { return levels_.at(static_cast<size_t>(d)); }

    // Index of t (x) (n-th N-basis row of degree d - deg t) within C0(d).
    int64_t c0_index(int64_t d, int64_t word_deg, int64_t word_idx, int64_t n_pos) const
    {
        const Offsets& off = c0_offsets_.at(static_cast<size_t>(d));
        return off.start.at(static_cast<size_t>(word_deg)) +
               word_idx * modules_.n_dim(d - word_deg) + n_pos;
    }

  private:
    // C0(d) = pairs (word of degree a, N row of degree d-a), a descending.
    // C1(d) = triples (word of degree a, letter v, N row of degree d-a-|v|),
    // a descending, then word, then letter, then row.
    struct Offsets {
        std::vector<int64_t> start;  // indexed by word degree a
        int64_t total = 0;
    };

    ModuleBases modules_;
    std::vector<Offsets> c0_offsets_;
    std::vector<Offsets> c1_offsets_;
    std::vector<Level> levels_;

    Offsets build_c0_offsets(int64_t d) const
    {
        Offsets off;
        off.start.assign(static_cast<size_t>(d) + 1, 0);
        int64_t acc = 0;
        for (int64_t a = d; a >= 0; --a) {
            off.start[static_cast<size_t>(a)] = acc;
            acc += modules_.tensor_algebra().dim(a) * modules_.n_dim(d - a);
        }
        off.total = acc;
        return off;
    }

    Offsets build_c1_offsets(int64_t d) const
    {
        const TensorAlgebra& T = modules_.tensor_algebra();
        Offsets off;
        off.start.assign(static_cast<size_t>(d) + 1, 0);
        int64_t acc = 0;
        for (int64_t a = d; a >= 0; --a) {
            off.start[static_cast<size_t>(a)] = acc;
            for (size_t v = 0; v < T.letter_count(); ++v) {
                int64_t rest = d - a - T.letter(v).degree;
                if (rest >= 0)
                    acc += T.dim(a) * modules_.n_dim(rest);
            }
        }
        off.total = acc;
        return off;
    }

    void fill_d1(int64_t d, SparseMatrix& mat) const
    {
        const TensorAlgebra& T = modules_.tensor_algebra();
        const Prime& p = T.prime();
        int64_t col = 0;
        for (int64_t a = d; a >= 0; --a) {
            const auto& words = T.basis(a);
            for (size_t t_idx = 0; t_idx < words.size(); ++t_idx) {
                const Word& t = words[t_idx];
                for (uint32_t v = 0; v < T.letter_count(); ++v) {
                    int64_t vd = T.letter(v).degree;
                    int64_t rest = d - a - vd;
                    if (rest < 0)
                        continue;
                    // t with v appended, for the tv (x) n entries
                    Word tv = t;
                    tv.push_back(v);
                    int64_t tv_idx = T.index_of(a + vd, tv);
                    const auto& rows = modules_.n_rows(rest);
                    for (size_t n_pos = 0; n_pos < rows.size(); ++n_pos) {
                        SparseColumn column;
                        column.emplace_back(c0_index(d, a + vd, tv_idx,
                                                     static_cast<int64_t>(n_pos)),
                                            1);
                        // v acting on the N row, reduced back to N coordinates
                        const FreeTerm& f =
                            modules_.free_basis(rest)[static_cast<size_t>(rows[n_pos])];
                        FreeTerm vf{ModuleBases::prepend({v}, f.word), f.gen};
                        SparseColumn vn = modules_.reduce_to_n(
                            rest + vd,
                            {{modules_.free_index(rest + vd, vf), 1}});
                        for (const auto& [npos2, c] : vn)
                            column.emplace_back(
                                c0_index(d, a, static_cast<int64_t>(t_idx), npos2), p.neg(c));
                        mat.set_column(p, col++, std::move(column));
                    }
                }
            }
        }
    }

    void fill_eps(int64_t d, SparseMatrix& mat) const
    {
        const TensorAlgebra& T = modules_.tensor_algebra();
        const Prime& p = T.prime();
        int64_t col = 0;
        for (int64_t a = d; a >= 0; --a) {
            for (const auto& t : T.basis(a)) {
                const auto& rows = modules_.n_rows(d - a);
                for (size_t n_pos = 0; n_pos < rows.size(); ++n_pos) {
                    const FreeTerm& f =
                        modules_.free_basis(d - a)[static_cast<size_t>(rows[n_pos])];
                    FreeTerm tf{ModuleBases::prepend(t, f.word), f.gen};
                    SparseColumn column = modules_.reduce_to_n(
                        d, {{modules_.free_index(d, tf), 1}});
                    mat.set_column(p, col++, std::move(column));
                }
            }
        }
    }

    static void assert_composite_zero(const Prime& p, const Level& level)
    {
        for (const auto& col : level.d1.columns) {
            DenseVec acc(static_cast<size_t>(level.n_dim), 0);
            for (const auto& [row, c] : col)
                for (const auto& [nrow, ec] : level.eps.columns[static_cast<size_t>(row)])
                    acc[static_cast<size_t>(nrow)] = p.add(acc[static_cast<size_t>(nrow)],
                                                           p.mul(c, ec));
            for (uint32_t v : acc)
                if (v != 0)
                    throw Error("eps composed with d1 is nonzero");
        }
    }
};

inline KoszulComplex build_koszul(const TensorAlgebra& T, const ModulePresentation& P,
                                  int64_t d_max)
{
    return KoszulComplex(T, P, d_max);
}

struct ExactnessLine {
    int64_t d = 0;
    int64_t c1_dim = 0;
    int64_t c0_dim = 0;
    int64_t n_dim = 0;
    int64_t rank_d1 = 0;
    int64_t rank_eps = 0;
    bool exact = false;
};

struct ExactnessReport {
    std::vector<ExactnessLine> lines;
    bool ok = true;
};

// Rank arithmetic for 0 -> C1 -> C0 -> N -> 0 in each degree: d1 injective,
// image of d1 = kernel of eps, eps surjective.
inline ExactnessReport exactness_check(const KoszulComplex& K)
{
    const Prime& p = K.modules().tensor_algebra().prime();
    ExactnessReport report;
    for (int64_t d = 0; d <= K.d_max(); ++d) {
        const KoszulComplex::Level& level = K.level(d);
        ExactnessLine line;
        line.d = d;
        line.c1_dim = level.c1_dim;
        line.c0_dim = level.c0_dim;
        line.n_dim = level.n_dim;
        line.rank_d1 = rank(p, level.d1);
        line.rank_eps = rank(p, level.eps);
        line.exact = line.rank_d1 == line.c1_dim &&
                     line.c0_dim - line.rank_eps == line.rank_d1 &&
                     line.rank_eps == line.n_dim;
        report.ok = report.ok && line.exact;
        report.lines.push_back(line);
    }
    return report;
}

struct TorTrivialResult {
    std::vector<std::vector<int64_t>> koszul;  // [s][d], s = 0..s_max
    std::vector<std::vector<int64_t>> bar;     // [s][d]
    bool match = false;
};

namespace detail {

// Tor_s^{T(V)}(F_p, F_p) from the Koszul resolution of the trivial module:
// apply F_p (x)_T to the resolution, i.e. restrict both levels to empty-word
// basis elements, and take homology of the induced two-term complex.
inline std::vector<std::vector<int64_t>> koszul_trivial_tor(const TensorAlgebra& T,
                                                            const KoszulComplex& K,
                                                            int64_t d_max, int64_t s_max)
{
    const Prime& p = T.prime();
    std::vector<std::vector<int64_t>> dims(static_cast<size_t>(s_max) + 1,
                                           std::vector<int64_t>(static_cast<size_t>(d_max) + 1, 0));
    for (int64_t d = 0; d <= d_max; ++d) {
        // reduced levels: P1 = V (x) N, P0 = N, both with the empty-word prefix
        const auto& modules = K.modules();
        int64_t p0_dim = modules.n_dim(d);
        // induced d1: restrict each empty-word column of d1 to empty-word rows
        std::vector<std::pair<uint32_t, int64_t>> p1_basis;  // (letter, n_pos)
        for (uint32_t v = 0; v < T.letter_count(); ++v) {
            int64_t rest = d - T.letter(v).degree;
            if (rest < 0)
                continue;
            for (int64_t n_pos = 0; n_pos < modules.n_dim(rest); ++n_pos)
                p1_basis.emplace_back(v, n_pos);
        }
        SparseMatrix induced(p0_dim, static_cast<int64_t>(p1_basis.size()));
        const KoszulComplex::Level& level = K.level(d);
        // empty-word C1 columns sit in the word-degree-0 block, as do the
        // empty-word C0 rows; locate both through c0_index bookkeeping
        int64_t col_out = 0;
        int64_t c1_empty_start = level.c1_dim - static_cast<int64_t>(p1_basis.size());
        int64_t c0_empty_start = level.c0_dim - p0_dim;
        for (size_t j = 0; j < p1_basis.size(); ++j) {
            const SparseColumn& full =
                level.d1.columns[static_cast<size_t>(c1_empty_start) + j];
            SparseColumn cut;
            for (const auto& [row, c] : full)
                if (row >= c0_empty_start)
                    cut.emplace_back(row - c0_empty_start, c);
            induced.set_column(p, col_out++, std::move(cut));
        }
        int64_t r = rank(p, induced);
        dims[0][static_cast<size_t>(d)] = p0_dim - r;
        if (s_max >= 1)
            dims[1][static_cast<size_t>(d)] = static_cast<int64_t>(p1_basis.size()) - r;
        // resolution has length one: higher Tor vanishes
    }
    return dims;
}

// Independent truncated bar complex for Tor^{T(V)}(F_p, F_p): C_s is spanned
// by tuples of positive-degree words; only the inner faces survive trivial
// coefficients, and they concatenate adjacent words with sign (-1)^i.
inline std::vector<std::vector<int64_t>> bar_trivial_tor(const TensorAlgebra& T, int64_t d_max,
                                                         int64_t s_max)
{
    const Prime& p = T.prime();
    using Tuple = std::vector<Word>;
    // chains[s][d]: index of each tuple
    std::vector<std::vector<std::map<Tuple, int64_t>>> chains(
        static_cast<size_t>(s_max) + 2,
        std::vector<std::map<Tuple, int64_t>>(static_cast<size_t>(d_max) + 1));
    Tuple cur;
    auto rec = [&](auto&& self, int64_t s, int64_t used) -> void {
        if (s < static_cast<int64_t>(chains.size())) {
            auto& slot = chains[static_cast<size_t>(s)][static_cast<size_t>(used)];
            slot.emplace(cur, static_cast<int64_t>(slot.size()));
        }
        if (s >= static_cast<int64_t>(chains.size()) - 1)
            return;
        for (int64_t e = 1; used + e <= d_max; ++e)
            for (const auto& w : T.basis(e)) {
                cur.push_back(w);
                self(self, s + 1, used + e);
                cur.pop_back();
            }
    };
    rec(rec, 0, 0);

    auto build = [&](int64_t s, int64_t d) {
        const auto& src = chains[static_cast<size_t>(s)][static_cast<size_t>(d)];
        const auto& dst = chains[static_cast<size_t>(s) - 1][static_cast<size_t>(d)];
        SparseMatrix mat(static_cast<int64_t>(dst.size()), static_cast<int64_t>(src.size()));
        for (const auto& [tuple, col_idx] : src) {
            SparseColumn col;
            for (int64_t i = 1; i < s; ++i) {
                Tuple merged;
                merged.reserve(tuple.size() - 1);
                for (size_t k = 0; k + 1 < static_cast<size_t>(i); ++k)
                    merged.push_back(tuple[k]);
                merged.push_back(ModuleBases::prepend(tuple[static_cast<size_t>(i - 1)],
                                                      tuple[static_cast<size_t>(i)]));
                for (size_t k = static_cast<size_t>(i) + 1; k < tuple.size(); ++k)
                    merged.push_back(tuple[k]);
                col.emplace_back(dst.at(merged), i % 2 == 0 ? 1 : p.neg(1));
            }
            mat.set_column(p, col_idx, std::move(col));
        }
        return mat;
    };

    std::vector<std::vector<int64_t>> dims(static_cast<size_t>(s_max) + 1,
                                           std::vector<int64_t>(static_cast<size_t>(d_max) + 1, 0));
    std::vector<std::vector<int64_t>> ranks(static_cast<size_t>(s_max) + 2,
                                            std::vector<int64_t>(static_cast<size_t>(d_max) + 1, 0));
    for (int64_t s = 1; s <= s_max + 1; ++s)
        for (int64_t d = 0; d <= d_max; ++d)
            ranks[static_cast<size_t>(s)][static_cast<size_t>(d)] = rank(p, build(s, d));
    for (int64_t s = 0; s <= s_max; ++s)
        for (int64_t d = 0; d <= d_max; ++d) {
            int64_t c =
                static_cast<int64_t>(chains[static_cast<size_t>(s)][static_cast<size_t>(d)].size());
            int64_t r_out = s == 0 ? 0 : ranks[static_cast<size_t>(s)][static_cast<size_t>(d)];
            dims[static_cast<size_t>(s)][static_cast<size_t>(d)] =
                c - r_out - ranks[static_cast<size_t>(s) + 1][static_cast<size_t>(d)];
        }
    return dims;
}

}  // namespace detail

// Tor over T(V) with trivial coefficients on both sides, computed two ways:
// from the Koszul resolution of F_p and from a truncated bar complex. The two
// tables must agree (and equal F_p, V, 0, ... by exactness).
inline TorTrivialResult tor_trivial(const TensorAlgebra& T, int64_t d_max, int64_t s_max = 3)
{
    if (s_max < 2)
        throw InvalidArgument("s_max must be at least 2 to see Tor vanishing");
    KoszulComplex K(T, trivial_module(T), d_max);
    TorTrivialResult result;
    result.koszul = detail::koszul_trivial_tor(T, K, d_max, s_max);
    result.bar = detail::bar_trivial_tor(T, d_max, s_max);
    result.match = result.koszul == result.bar;
    return result;
}

}  // namespace ekalg
