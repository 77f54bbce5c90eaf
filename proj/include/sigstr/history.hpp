// Edit timeline over a single evolving text, searchable across all versions.
//
// Version 1 is the empty text; each edit (insert one character, delete a
// block, move a block) produces the next version via a constant number of
// splits and concats, so every version stays reachable as a handle. Each
// edit also records an anchored string per junction it creates: the full
// prefix and suffix around the junction, stamped with the new version and
// the junction's position. A pattern occurrence exists in the history
// exactly when some junction first made its letters adjacent, so streaming
// the anchor index in version order, one query per pattern split, lists
// each distinct occurrence once, at the version where it first appeared.
//
// The timeline heals itself across store restarts: snapshots, anchors and
// the insertion registry are handle- and text-based, so they survive; only
// the index keys are signature-derived, and those are re-derived wholesale
// whenever the store's epoch moves. A find interrupted mid-flight by a
// restart aborts with EpochChange; retrying it is always safe.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sigstr/collection.hpp"
#include "sigstr/range_index.hpp"

namespace sigstr {

class History {
 public:
  explicit History(Store& st) : st_(st) { idx_.emplace(st.nav()); }

  // Each returns the version number it created (the first edit returns 2).
  std::int64_t apply_insert(Len pos, unsigned char c);
  std::int64_t apply_delete(Len l, Len r);
  std::int64_t apply_move(Len l, Len r, Len dest);

  std::int64_t version() const { return std::int64_t(snaps_.size()); }
  Len length() const;
  std::optional<Handle> current() const { return snaps_.back(); }
  std::optional<Handle> at(std::int64_t v) const { return snaps_.at(v - 1); }

  // Distinct occurrences over the whole history, sorted by (version,
  // position); at most k when k > 0. A position refers to the version where
  // that occurrence first appeared.
  std::vector<std::pair<std::int64_t, Len>> find(std::string_view p,
                                                 std::size_t k = 0);

  // Re-derives every index key from the stored handles. Runs automatically
  // when the backing store's epoch moves (signatures change, handles do
  // not); public so a caller can force it.
  void rebuild();

 private:
  struct Anchor {
    Handle left, right;     // full prefix and suffix around the junction
    std::int64_t version;   // when the junction appeared
    Len delta;              // position right of the junction in that version
  };

  std::optional<Handle> prefix(Len m) const;  // first m chars of the text
  std::optional<Handle> suffix(Len s) const;  // chars s.. of the text
  void sync();  // rebuild the index keys if the store restarted
  void add_anchor(Handle left, Handle right, std::int64_t v, Len delta);
  std::int64_t commit(std::optional<Handle> next);

  Store& st_;
  std::optional<RangeIndex> idx_;
  std::vector<Anchor> anchors_;
  std::size_t flushed_ = 0;  // anchors already keyed into idx_
  unsigned seen_ = 0;        // store epoch the index was built against
  std::vector<std::optional<Handle>> snaps_{std::nullopt};  // snaps_[v-1]
  struct Insertion {
    unsigned char ch;
    std::int64_t version;
    Len pos;
  };
  std::vector<Insertion> registry_;
};

}  // namespace sigstr
