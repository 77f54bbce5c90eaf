// Pattern occurrences across an activatable subset of the collection.
//
// Every active string contributes its parse nodes to a shared registry: each
// signature in use holds links to the parents referencing it, and every
// non-terminal signature contributes one point to a range index, keyed by
// the reverse of the text left of its first junction and the text right of
// it. An occurrence of a pattern p always straddles a junction of exactly
// one node (the lowest node covering it), so prefix rectangles over a small
// candidate set of pattern splits discover every such node; occurrences that
// coincide with a whole node of p's own signature are read off directly.
// Positions are then recovered by walking parent links back to the active
// roots.
//
// The index heals itself across store restarts: the set of activated handles
// is the durable contract, and whenever the store's epoch moves, the whole
// registry is rebuilt from those handles before the next operation proceeds.
// An operation interrupted mid-flight by a restart aborts with EpochChange;
// retrying it is always safe.
#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sigstr/collection.hpp"
#include "sigstr/range_index.hpp"

namespace sigstr {

class MatchIndex {
 public:
  explicit MatchIndex(Store& st) : st_(st) { idx_.emplace(st.nav()); }

  void activate(Handle h);    // no-op when already active
  void deactivate(Handle h);  // no-op when not active
  bool is_active(Handle h) const { return wanted_.count(h) != 0; }
  std::vector<Handle> actives() const {
    return {wanted_.begin(), wanted_.end()};
  }

  // Occurrences of p among the active strings, as (handle, 1-based
  // position), sorted; at most limit entries when limit > 0. Interns p (and
  // its query splits) into the collection.
  std::vector<std::pair<Handle, Len>> find(std::string_view p,
                                           std::size_t limit = 0);

 private:
  struct Entry {
    struct Ref {
      SigId child;
      std::list<SigId>::iterator it;  // this entry's slot in child's pars
    };
    std::list<SigId> pars;  // parents referencing this signature
    std::vector<Ref> refs;  // child slots held by this signature (<= 2)
    bool inW = false;       // signature is the root of an active handle
  };
  using OccList = std::vector<std::pair<Handle, Len>>;  // (handle, 0-based)

  void sync();             // rebuild after a restart, realize pending handles
  void realize(Handle h);  // enter h's parse nodes into the registry
  void unrealize(Handle h);
  void visit(SigId s, Len delta, Handle h, Len n);
  void unlink(SigId s);  // gc a no-longer-referenced signature
  SigId rev_part(SigId child, Len delta, Handle h, Len n);
  const OccList& occ(SigId s, std::unordered_map<SigId, OccList>& memo);

  Store& st_;
  std::optional<RangeIndex> idx_;
  std::unordered_map<SigId, Entry> entries_;
  std::unordered_map<Handle, unsigned char> last_char_;
  std::set<Handle> wanted_;    // the activation contract (survives restarts)
  std::set<Handle> realized_;  // subset of wanted_ present in the registry
  unsigned seen_ = 0;          // store epoch the registry was built against
};

}  // namespace sigstr
