// Longest-common-prefix and lexicographic comparison of stored strings,
// answered by walking the two parse trees layer by layer.
#pragma once

#include "sigstr/collection.hpp"

namespace sigstr {

// Signature-level queries; any signature in the grammar is accepted.
Len lcp_sigs(const Nav& nav, SigId s1, SigId s2);
int compare_sigs(const Nav& nav, SigId s1, SigId s2);

// Length of the longest common prefix of str(a) and str(b).
Len lcp(const Collection& col, Handle a, Handle b);

// -1, 0, +1 as str(a) is lexicographically below, equal to, or above str(b).
int compare(const Collection& col, Handle a, Handle b);

// True iff str(a) is a (not necessarily proper) prefix of str(b).
bool is_prefix(const Collection& col, Handle a, Handle b);

}  // namespace sigstr
