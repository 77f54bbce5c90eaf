"""End-to-end smoke of the python bindings against plain python strings."""

import sys

from sigstr import Session


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


def main():
    s = Session(seed=5)

    h0 = s.make("banana")
    h1 = s.make("nana")
    h2 = s.make("ba")
    check(s.concat(h2, h1) == h0, "ba+nana dedups onto banana")
    check(s.text(h0) == "banana", "text roundtrip")
    check(s.length(h0) == 6, "length")
    left, right = s.split(h0, 3)
    check(s.text(left) == "ban" and s.text(right) == "ana", "split parts")
    check(s.eq(h0, s.concat(left, right)), "split then concat is identity")
    check(not s.eq(h0, h1), "different strings differ")
    check(s.compare(h2, h0) == -1, "ba < banana")
    check(s.compare(h0, h0) == 0, "equal compares 0")
    check(s.lcp(h0, s.make("banquet")) == 3, "lcp")

    s.activate(h0)
    s.activate(h1)
    check(s.find("ana") == [(h0, 2), (h0, 4), (h1, 2)], "find positions")
    check(s.find("ana", limit=2) == [(h0, 2), (h0, 4)], "find limit")
    s.deactivate(h0)
    check(s.find("ban") == [], "deactivated strings do not match")

    for i, c in enumerate("abab"):
        s.hist_insert(i + 1, c)
    check(s.hist_text(s.hist_version()) == "abab", "history text")
    v = s.hist_move(1, 2, 4)
    check(s.hist_text(v) == "abab", "moving ab after ab restores abab")
    check(s.hist_find("ab")[0] == (3, 1), "first ab at version 3")
    check(len(s.hist_find("ba")) >= 1, "ba appeared at some point")

    check(s.run("MAKE banana") == "H" + str(h0), "protocol round trip")
    check(s.run("FIND zz") == "-", "protocol miss")

    try:
        s.split(h0, 99)
    except Exception:
        pass
    else:
        check(False, "bad split point must raise")

    try:
        s.concat(10_000, h0)
    except Exception:
        pass
    else:
        check(False, "unknown handle must raise")

    narrow = Session(seed=1, bits=8)
    a = narrow.make("abab")
    b = narrow.make("ab")
    check(narrow.eq(narrow.concat(b, b), a), "narrow-bit session agrees")

    print("ok")


if __name__ == "__main__":
    main()
