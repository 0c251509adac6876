#include "lambridge/prover.hpp"

#include <functional>
#include <stdexcept>

namespace lambridge {

namespace {

using Sink = std::function<bool(Derivation&&)>; // false stops the search

// The search mirrors the shape of beta-normal eta-long derivations: peel
// the goal's connectives into fresh hypotheses, then pick a head whose
// decomposition ends in the goal atom and distribute the rest of the word
// over its argument positions, each segment contiguous and non-empty.
struct Searcher {
  const Grammar& g;
  Budget budget;
  bool exhausted = false;
  long nodes = 0;
  unsigned long fresh = 0;

  bool spend(int depth) {
    if (depth > budget.maxDepth || ++nodes > budget.maxNodes) {
      exhausted = true;
      return false;
    }
    return true;
  }

  // Returns false iff the sink asked to stop.
  bool prove(const Word& word, const Type& goal, int depth, const Sink& sink) {
    if (word.empty()) return true;
    if (!spend(depth)) return true;
    if (!goal.isAtom()) {
      std::string x = "x" + std::to_string(++fresh);
      Conn c = goal.conn();
      Word inner = attach(word, c, ContextItem::var(x, goal.argument()));
      return prove(inner, goal.result(), depth + 1, [&](Derivation&& sub) {
        Derivation node;
        node.rule = Rule::Intro;
        node.conn = c;
        node.conclusion = Sequent{word, Term::abs(x, *sub.conclusion.term), goal};
        node.children.push_back(std::move(sub));
        return sink(std::move(node));
      });
    }
    for (std::size_t p = 0; p < word.size(); p++) {
      std::vector<std::pair<Derivation, Type>> heads;
      if (word[p].isVar) {
        Derivation leaf;
        leaf.rule = Rule::Ax;
        leaf.conclusion = Sequent{{word[p]}, Term::var(word[p].name), word[p].type};
        heads.emplace_back(std::move(leaf), word[p].type);
      } else {
        const auto& types = g.typesOf(word[p].name);
        for (std::size_t k = 0; k < types.size(); k++) {
          Derivation leaf;
          leaf.rule = Rule::Lex;
          leaf.lexIndex = k;
          leaf.conclusion = Sequent{{word[p]}, Term::constant(word[p].name, k), types[k]};
          heads.emplace_back(std::move(leaf), types[k]);
        }
      }
      for (auto& [leaf, headType] : heads) {
        Decomposition dec = decompose(headType);
        if (dec.head != goal) continue;
        if (!headSearch(word, p, leaf, dec, depth, sink)) return false;
      }
    }
    return true;
  }

  bool headSearch(const Word& word, std::size_t p, const Derivation& leaf,
                  const Decomposition& dec, int depth, const Sink& sink) {
    std::size_t n = dec.args.size();
    std::vector<std::pair<std::size_t, std::size_t>> segs(n);

    // Argument result types along the elimination chain: after consuming
    // arguments 1..k the head is left at types[k].
    std::vector<Type> chain(n + 1);
    chain[n] = dec.head;
    for (std::size_t k = n; k-- > 0;)
      chain[k] = Type::slash(dec.args[k].first, dec.args[k].second, chain[k + 1]);

    // Phase 2: prove the chosen segments in argument order and assemble the
    // elimination chain.
    std::function<bool(std::size_t, std::size_t, std::size_t, Derivation, int)> proveArgs =
        [&](std::size_t k, std::size_t exlo, std::size_t exhi, Derivation acc,
            int d) -> bool {
      if (k == n) return sink(std::move(acc));
      Word seg(word.begin() + segs[k].first, word.begin() + segs[k].second);
      return prove(seg, dec.args[k].second, d + 1, [&](Derivation&& argD) {
        std::size_t lo = std::min(exlo, segs[k].first);
        std::size_t hi = std::max(exhi, segs[k].second);
        Derivation node;
        node.rule = Rule::Elim;
        node.conn = dec.args[k].first;
        node.conclusion = Sequent{Word(word.begin() + lo, word.begin() + hi),
                                  Term::app(*acc.conclusion.term, *argD.conclusion.term),
                                  chain[k + 1]};
        node.children.push_back(acc); // copies: several arg derivations may share it
        node.children.push_back(std::move(argD));
        return proveArgs(k + 1, lo, hi, std::move(node), d);
      });
    };

    // Phase 1: choose contiguous non-empty segments inside-out.  Segment
    // boundaries are enumerated by increasing split position.
    std::function<bool(std::size_t, std::size_t, std::size_t)> chooseSeg =
        [&](std::size_t j, std::size_t exlo, std::size_t exhi) -> bool {
      if (!spend(depth)) return true;
      if (j == n) {
        if (exlo != 0 || exhi != word.size()) return true;
        return proveArgs(0, p, p + 1, leaf, depth);
      }
      if (dec.args[j].first == Conn::Right) {
        for (std::size_t m = exhi + 1; m <= word.size(); m++) {
          segs[j] = {exhi, m};
          if (!chooseSeg(j + 1, exlo, m)) return false;
        }
      } else {
        for (std::size_t m = exlo; m-- > 0;) {
          segs[j] = {m, exlo};
          if (!chooseSeg(j + 1, m, exhi)) return false;
        }
      }
      return true;
    };

    return chooseSeg(0, p, p + 1);
  }
};

} // namespace

ProveResult proveIE(const Grammar& g, const Word& context, const Type& goal,
                    const Budget& budget, std::size_t maxDerivations) {
  Searcher s{g, budget};
  std::vector<Derivation> found;
  s.prove(context, goal, 0, [&](Derivation&& d) {
    found.push_back(std::move(d));
    return found.size() < maxDerivations;
  });
  return {std::move(found), s.exhausted};
}

Word sentenceWord(const Grammar& g, const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw std::runtime_error("empty sentence");
  Word w;
  for (const auto& t : tokens) {
    if (!g.isLexeme(t)) throw std::runtime_error("unknown token: " + t);
    w.push_back(ContextItem::lexeme(t));
  }
  return w;
}

ProveResult proveSentence(const Grammar& g, const std::vector<std::string>& tokens,
                          const Type& goal, const Budget& budget, std::size_t maxDerivations) {
  return proveIE(g, sentenceWord(g, tokens), goal, budget, maxDerivations);
}

std::optional<Term> ArgProver::prove(const Type& alpha, const Type& gamma,
                                     const std::string& freeVar) {
  std::optional<Term> witness;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find({alpha, gamma});
    if (it != cache_.end()) {
      witness = it->second;
    } else {
      Word w{ContextItem::var("_a", alpha)};
      ProveResult r = proveIE(g_, w, gamma, budget_, 1);
      exhausted_ = r.exhausted;
      if (r.provable()) witness = *r.derivations[0].conclusion.term;
      cache_[{alpha, gamma}] = witness;
    }
  }
  if (!witness) return std::nullopt;
  return substitute(*witness, "_a", Term::var(freeVar));
}

} // namespace lambridge
