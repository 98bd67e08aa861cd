#pragma once

#include "ipr/dyadic.hpp"
#include "ipr/grid.hpp"
#include "ipr/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ipr {

// phi(x) mod 3 for x in D intersect (0,2); OutOfRange otherwise.
int dyadic_three_color(const Dyadic& x);

// A finite coloring of an explicit grid. Four kinds:
//   table      explicit assignment value -> color
//   interval   color = number of cut points <= value
//   dyadic-phi phi(x) mod 3, computed on demand, no table stored
//   product    classes are realized signature tuples (base(t*x))_{t=1..k}
class Coloring {
  public:
    enum class Kind { Table, Interval, DyadicPhi, Product };

    static Coloring table(Grid domain, int r, std::map<Rational, int> assignment);
    static Coloring interval(Grid domain, std::vector<Rational> cuts);
    static Coloring dyadic_phi(Grid domain);

    Kind kind() const { return kind_; }
    int r() const { return r_; }
    const Grid& domain() const { return domain_; }

    std::optional<int> try_color(const Rational& v) const;
    int color_of(const Rational& v) const;  // OutOfRange when v is not in the domain

    const std::map<Rational, int>& assignment() const { return table_; }
    const std::vector<Rational>& cuts() const { return cuts_; }
    const Coloring* product_base() const { return base_.get(); }
    int product_k() const { return k_; }
    const std::vector<std::vector<int>>& product_signatures() const { return signatures_; }

    struct Report {
        bool valid = true;
        std::vector<std::string> violations;
        std::vector<size_t> class_sizes;
    };
    Report validate() const;

  private:
    Kind kind_ = Kind::Table;
    Grid domain_;
    int r_ = 1;
    std::map<Rational, int> table_;
    std::vector<Rational> cuts_;
    std::shared_ptr<const Coloring> base_;
    int k_ = 0;
    std::vector<std::vector<int>> signatures_;  // sorted lex; class = index

    friend Coloring product_coloring(const Coloring&, int, const std::optional<Grid>&);
};

// Classes of x -> (base(1x), ..., base(kx)). The product domain is `sub` when
// given, otherwise the largest subset of base.domain whose needed multiples
// stay inside base.domain. DomainNotClosed when an explicit sub-domain point
// escapes, or when nothing at all is closed.
Coloring product_coloring(const Coloring& base, int k,
                          const std::optional<Grid>& sub = std::nullopt);

}  // namespace ipr
