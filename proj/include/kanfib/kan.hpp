#pragma once

#include "kanfib/homsearch.hpp"

namespace kanfib {

enum class Verdict { holds, fails, partial };

const char* verdict_name(Verdict v);

// Outcome of a finite verification: which condition was checked on what, how
// deep the truncation allowed the check to go, and witnesses on failure.
// Vacuously-true smoothness conditions are reported in `notes`, never silent.
struct CheckReport {
  std::string subject;
  std::string condition;
  Verdict verdict = Verdict::holds;
  int checked_to = 0;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  bool ok() const { return verdict == Verdict::holds; }
  std::string to_text() const;
};

// Kan(m,j): every (m,j)-horn has a filler; Kan!(m,j): exactly one.
CheckReport check_kan(const SimplicialSet& x, int m, int j, bool unique);

// n-groupoid: Kan(m,j) for all 1 <= m <= depth and all j, with unique fillers
// for m > n. Verdict is partial when depth < n + 2.
CheckReport classify_n_groupoid(const SimplicialSet& x, int n);

struct FillResult {
  Cell filler = no_cell;
  bool unique = false;
  int count = 0;
};
// Least filler of the horn; throws NoFiller when none exists.
FillResult fill_horn(const SimplicialSet& x, const HornTuple& t);

// Kan fibration of n-groupoids: tau_{m,j} = (lambda*, f_m) surjective onto the
// relative horn set for every (m,j), bijective for m > n (level-n fillers stay
// free); tau_0 = f_0 is surjective.
CheckReport check_fibration(const SimplicialMap& f, int n);

// Hypercover: same with boundary restrictions, tau_m = (d*, f_m); surjective
// for every m, bijective for m >= n.
CheckReport check_hypercover(const SimplicialMap& f, int n);

// f: Y -> X is an equivalence iff the end-evaluation from Y x_X X^{[1]} to X
// is a hypercover; verified to depth min(Y.depth, X.depth - 1).
CheckReport check_equivalence(const SimplicialMap& f, int n);

} // namespace kanfib
