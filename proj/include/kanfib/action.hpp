#pragma once

#include "kanfib/two_group.hpp"

namespace kanfib {

// Right strict action of a group G on a groupoid X by functors:
// phi[e] = id and phi[g] then phi[h] equals phi[g*h].
struct StrictAction {
  std::string name;
  FiniteGroupoid x;
  FiniteGroup g;
  std::vector<GroupoidFunctor> phi; // per group element
};

StrictAction build_strict_action(StrictAction raw);

// Strict action of the 2-group of a crossed module (H -> G, bnd, act):
// phi as above for G, plus for each h in H a natural transformation
// theta[h]: id => phi[bnd h] with theta[e] = id, the cocycle rule
// theta[h h'](x) = theta[h](x) . theta[h'](phi[bnd h](x)), and pasting
// coherence against every 3-cell of the classifying space.
struct Strict2GroupAction {
  std::string name;
  FiniteGroupoid x;
  CrossedModule xm;
  std::vector<GroupoidFunctor> phi;    // per element of G
  std::vector<std::vector<int>> theta; // theta[h][object] = arrow
};

Strict2GroupAction build_strict_2group_action(Strict2GroupAction raw);

// A verified Kan fibration pi: total -> base with its fiber over the basepoint.
struct FibrationBundle {
  SSetPtr total, base, fiber;
  SimplicialMap pi;   // total -> base
  SimplicialMap incl; // fiber -> total
  int degree = 1;     // groupoid degree of the certificate
  CheckReport certificate;
};

// Action groupoid of a strict 1-group action, as a bundle over the group nerve.
FibrationBundle strict_action_groupoid(const StrictAction& a, int depth = 4);

// Action groupoid of a strict 2-group action, as a bundle over the classifying
// space of the crossed module.
FibrationBundle strict_2group_action_groupoid(const Strict2GroupAction& a);

// Fiber recomputed as the pullback of pi along the basepoint; must agree with
// the stored fiber up to isomorphism.
SimplicialSet fiber_over_basepoint(const FibrationBundle& k);

// ---- action data extracted from a fibration ----------------------------------
// For each base edge g: the span groupoid Y_g (objects = 1-cells over g,
// arrows = squares over the degenerate square of g) with its two legs into the
// fiber groupoid; for each base 2-cell the transport table.
struct ActionSpan {
  Cell base_edge = no_cell;
  FiniteGroupoid y;
  std::vector<Cell> obj_cell;        // Y object -> total 1-cell
  GroupoidFunctor left, right;       // legs into the fiber groupoid
};

struct ActionSpanData {
  FiniteGroupoid fiber;
  std::vector<ActionSpan> spans; // per base 1-cell
  struct Transport {
    Cell base2 = no_cell;
    // (arrow y02' over d1, object y01 over d2, object y12 over d0) -> fiber arrow
    std::map<std::array<int, 3>, int> phi;
  };
  std::vector<Transport> transports; // per base 2-cell
};

ActionSpanData lambda_extract(const FibrationBundle& k);

// Pullback of the bundle along a pointed map into its base.
FibrationBundle pullback_bundle(const FibrationBundle& k, const SimplicialMap& along);

// Pushforward along a hypercover f with bijective f_0: cells of the result are
// prism-connected classes of total cells (levels <= 3) and boundary classes at
// level 4; returns the new bundle and the projection from the old total space.
struct PushforwardResult {
  FibrationBundle bundle;
  SimplicialMap proj;
};
PushforwardResult pushforward_bundle(const FibrationBundle& k, const SimplicialMap& f);

// Strictification of a bundle over a 1-group nerve: a genuinely strict action
// on the induced groupoid, with an equivalence from the fiber.
struct StrictifyResult {
  StrictAction action;
  SimplicialMap fiber_equivalence; // fiber complex -> nerve of the new groupoid
};
StrictifyResult strictify(const FibrationBundle& k);

// Objects of the total space whose isotropy covers the whole group: x is
// invariant iff the 1-cells from x to x surject onto the base 1-cells.
std::vector<Cell> invariant_objects(const FibrationBundle& k);

// Quotient of a free strict action (free on objects), with the projection
// from the action groupoid nerve; throws ActionNotFree with a witness.
struct QuotientResult {
  FiniteGroupoid quotient;
  SimplicialMap proj; // nerve of the action groupoid -> nerve of the quotient
};
QuotientResult free_quotient(const StrictAction& a, int depth = 4);

// Level-wise bundle isomorphism over a shared base (commutes with pi).
bool bundle_isomorphic(const FibrationBundle& a, const FibrationBundle& b);

} // namespace kanfib
