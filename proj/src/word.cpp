#include "lambridge/word.hpp"

namespace lambridge {

std::string ContextItem::str() const {
  if (!isVar) return name;
  return name + ":" + type.str();
}

Word attach(Word w, Conn c, ContextItem item) {
  if (c == Conn::Right) {
    w.push_back(std::move(item));
  } else {
    w.insert(w.begin(), std::move(item));
  }
  return w;
}

std::optional<std::pair<Word, ContextItem>> splitBoundary(const Word& w, Conn c) {
  if (w.size() < 2) return std::nullopt;
  Word rest = w;
  ContextItem item;
  if (c == Conn::Right) {
    item = rest.back();
    rest.pop_back();
  } else {
    item = rest.front();
    rest.erase(rest.begin());
  }
  return std::make_pair(std::move(rest), std::move(item));
}

std::string wordStr(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); i++) {
    if (i) out += ", ";
    out += w[i].str();
  }
  return out;
}

} // namespace lambridge
