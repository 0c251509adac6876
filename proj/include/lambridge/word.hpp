#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lambridge/type.hpp"

namespace lambridge {

// One letter of a context word: a lexeme occurrence or a typed variable.
struct ContextItem {
  bool isVar = false;
  std::string name;
  Type type; // meaningful iff isVar

  static ContextItem lexeme(std::string n) { return {false, std::move(n), Type()}; }
  static ContextItem var(std::string n, Type t) { return {true, std::move(n), std::move(t)}; }

  bool operator==(const ContextItem& o) const {
    return isVar == o.isVar && name == o.name && (!isVar || type == o.type);
  }
  std::string str() const;
};

// Context words are never empty inside sequents; empty vectors only appear
// transiently while assembling words (f_c(w, epsilon) = w).
using Word = std::vector<ContextItem>;

// f_c: attach(w, /, i) = w·i and attach(w, \, i) = i·w.
Word attach(Word w, Conn c, ContextItem item);

// Inverse of attach. Returns (rest, item) with w = f_c(rest, item), or
// nullopt when |w| < 2 (the remainder must stay non-empty).
std::optional<std::pair<Word, ContextItem>> splitBoundary(const Word& w, Conn c);

std::string wordStr(const Word& w);

} // namespace lambridge
