#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lambridge/acg.hpp"
#include "lambridge/axioms.hpp"
#include "lambridge/cfg.hpp"
#include "lambridge/prover.hpp"
#include "lambridge/typing.hpp"

using namespace lambridge;
using nlohmann::json;

namespace {

std::vector<std::string> tokenize(const std::string& sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) {
    for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(tok);
  }
  return out;
}

struct Options {
  std::string grammarPath;
  std::string sentence;
  int iterations = 3;
  std::size_t maxLen = 5;
  bool noFilter = false;
  bool asJson = false;
  int budgetDepth = 40;
  long budgetNodes = 200000;
  std::string output;

  Budget budget() const { return Budget{budgetDepth, budgetNodes}; }
  LevelOptions levelOptions() const { return LevelOptions{iterations, !noFilter, budget()}; }
};

void writeOut(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + opt.output);
  out << text;
}

// check: 0 derivable, 1 not derivable, 2 budget exhausted, 3 unknown token.
int cmdCheck(const Options& opt, bool printNesting) {
  Grammar g = loadGrammar(opt.grammarPath);
  auto tokens = tokenize(opt.sentence);
  for (const auto& t : tokens)
    if (!g.isLexeme(t)) {
      if (opt.asJson)
        std::cout << json{{"status", "unknown-token"}, {"token", t}}.dump(2) << "\n";
      else
        std::cout << "unknown token: " << t << "\n";
      return 3;
    }
  if (tokens.empty()) {
    std::cout << "empty sentence\n";
    return 3;
  }
  ProveResult r = proveSentence(g, tokens, g.startType(), opt.budget(), 1);
  if (r.provable()) {
    const Derivation& d = r.derivations[0];
    Term term = *d.conclusion.term;
    int nesting = nestingDepth(term);
    if (opt.asJson) {
      json out{{"status", "derivable"},
               {"term", termStr(term, {true, &g})},
               {"derivation", derivationSexpr(d, &g)}};
      if (printNesting) out["nesting"] = nesting;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "derivable\nterm: " << termStr(term, {true, &g}) << "\n";
      if (printNesting) std::cout << "nesting: " << nesting << "\n";
      std::cout << "derivation: " << derivationSexpr(d, &g) << "\n";
    }
    return 0;
  }
  if (r.exhausted) {
    std::cout << (opt.asJson ? json{{"status", "budget-exhausted"}}.dump(2)
                             : std::string("budget exhausted"))
              << "\n";
    return 2;
  }
  std::cout << (opt.asJson ? json{{"status", "not-derivable"}}.dump(2)
                           : std::string("not derivable"))
            << "\n";
  return 1;
}

int cmdLevel(const Options& opt) {
  Grammar g = loadGrammar(opt.grammarPath);
  AxiomSet axioms = level(g, opt.levelOptions());
  std::map<int, std::size_t> perGen;
  for (const auto& ax : axioms.axioms()) perGen[ax.generation]++;
  if (opt.asJson) {
    json counts = json::object();
    for (const auto& [gen, n] : perGen) counts[std::to_string(gen)] = n;
    json out = json::parse(axiomsJson(axioms, g));
    out["perGeneration"] = counts;
    writeOut(opt, out.dump(2) + "\n");
  } else {
    std::string text = renderAxioms(axioms, g);
    text += "# total " + std::to_string(axioms.size());
    for (const auto& [gen, n] : perGen)
      text += ", gen " + std::to_string(gen) + ": " + std::to_string(n);
    text += "\n";
    writeOut(opt, text);
  }
  return 0;
}

int cmdExportCfg(const Options& opt) {
  Grammar g = loadGrammar(opt.grammarPath);
  AxiomSet axioms = level(g, opt.levelOptions());
  Cfg cfg = toCfg(axioms, g);
  writeOut(opt, opt.asJson ? cfgJson(cfg) + "\n" : renderCfg(cfg));
  return 0;
}

int cmdExportAcg(const Options& opt) {
  Grammar g = loadGrammar(opt.grammarPath);
  AxiomSet axioms = level(g, opt.levelOptions());
  Cfg cfg = toCfg(axioms, g);
  Acg acg = cfgToAcg(cfg);
  if (auto fail = validateLexicon(acg.lexicon, acg.abstractSig, acg.objectSig))
    throw std::runtime_error("generated lexicon failed validation at " + fail->constant + ": " +
                             fail->reason);
  writeOut(opt, opt.asJson ? acgJson(acg) + "\n" : renderAcg(acg));
  return 0;
}

int cmdParseCfg(const Options& opt) {
  std::ifstream in(opt.grammarPath);
  if (!in) throw std::runtime_error("cannot open cfg file: " + opt.grammarPath);
  std::ostringstream buf;
  buf << in.rdbuf();
  Cfg cfg = parseCfgText(buf.str());
  auto tokens = tokenize(opt.sentence);
  if (tokens.empty()) throw std::runtime_error("empty sentence");
  auto trees = parse(cfg, tokens, 10000);
  if (opt.asJson) {
    std::cout << json{{"member", !trees.empty()}, {"trees", trees.size()}}.dump(2) << "\n";
  } else {
    std::cout << (trees.empty() ? "not a member" : "member") << " (" << trees.size()
              << " parse trees)\n";
  }
  return trees.empty() ? 1 : 0;
}

struct CompareRow {
  std::vector<std::string> word;
  bool full;
  bool bounded;
  bool cfg;
};

int cmdCompare(const Options& opt) {
  Grammar g = loadGrammar(opt.grammarPath);
  AxiomSet axioms = level(g, opt.levelOptions());
  Cfg cfg = toCfg(axioms, g);
  auto language = enumerateLanguage(cfg, opt.maxLen);

  std::vector<std::vector<std::string>> words;
  {
    std::vector<std::vector<std::string>> frontier{{}};
    for (std::size_t len = 1; len <= opt.maxLen; len++) {
      std::vector<std::vector<std::string>> next;
      for (const auto& w : frontier)
        for (const auto& lex : g.lexemes) {
          auto ext = w;
          ext.push_back(lex);
          next.push_back(std::move(ext));
        }
      words.insert(words.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
  }

  std::vector<CompareRow> rows(words.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= words.size()) break;
      const auto& w = words[i];
      ProveResult all = proveSentence(g, w, g.startType(), opt.budget());
      bool full = all.provable();
      bool bounded = false;
      for (const auto& d : all.derivations)
        if (nestingDepth(*d.conclusion.term) <= opt.iterations) {
          bounded = true;
          break;
        }
      rows[i] = CompareRow{w, full, bounded, language.count(w) != 0};
    }
  };
  std::size_t nThreads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> futures;
  for (std::size_t t = 0; t < nThreads; t++)
    futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();

  std::vector<const CompareRow*> fullDiff, boundedDiff;
  for (const auto& row : rows) {
    if (row.full != row.cfg) fullDiff.push_back(&row);
    if (row.bounded != row.cfg) boundedDiff.push_back(&row);
  }

  auto joined = [](const std::vector<std::string>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); i++) s += (i ? " " : "") + w[i];
    return s;
  };
  if (opt.asJson) {
    json jf = json::array(), jb = json::array();
    for (auto* r : fullDiff)
      jf.push_back({{"word", joined(r->word)}, {"sIE", r->full}, {"cfg", r->cfg}});
    for (auto* r : boundedDiff)
      jb.push_back({{"word", joined(r->word)}, {"bounded", r->bounded}, {"cfg", r->cfg}});
    std::cout << json{{"words", words.size()},
                      {"level", opt.iterations},
                      {"maxLen", opt.maxLen},
                      {"fullVsCfg", jf},
                      {"boundedVsCfg", jb}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "checked " << words.size() << " words (maxLen " << opt.maxLen << ", level "
              << opt.iterations << ")\n";
    std::cout << "full S_IE vs CFG differences: " << fullDiff.size() << "\n";
    for (auto* r : fullDiff)
      std::cout << "  " << joined(r->word) << "  S_IE=" << r->full << " cfg=" << r->cfg << "\n";
    std::cout << "nesting-bounded (<= " << opt.iterations
              << ") vs CFG differences: " << boundedDiff.size() << "\n";
    for (auto* r : boundedDiff)
      std::cout << "  " << joined(r->word) << "  bounded=" << r->bounded << " cfg=" << r->cfg
                << "\n";
  }
  return boundedDiff.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambridge: Lambek grammar parsing and CFG/ACG conversion"};
  app.require_subcommand(1);

  Options opt;

  auto addCommon = [&](CLI::App* cmd, bool withSentence, bool cfgFile = false) {
    cmd->add_option("grammar", opt.grammarPath,
                    cfgFile ? "CFG file (export-cfg text format)" : "grammar file")
        ->required();
    if (withSentence) cmd->add_option("sentence", opt.sentence, "sentence")->required();
    cmd->add_option("--iterations,-n", opt.iterations, "MaN leveling rounds")
        ->envname("LAMBRIDGE_ITERATIONS")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-len", opt.maxLen, "word length bound for enumeration")
        ->envname("LAMBRIDGE_MAX_LEN")
        ->check(CLI::Range(std::size_t{0}, std::size_t{8}));
    cmd->add_flag("--no-filter", opt.noFilter, "skip the accessibility filter")
        ->envname("LAMBRIDGE_NO_FILTER");
    cmd->add_flag("--json", opt.asJson, "machine-readable output")
        ->envname("LAMBRIDGE_JSON");
    cmd->add_option("--budget-depth", opt.budgetDepth, "search depth cap")
        ->envname("LAMBRIDGE_BUDGET_DEPTH");
    cmd->add_option("--budget-nodes", opt.budgetNodes, "search node cap")
        ->envname("LAMBRIDGE_BUDGET_NODES");
    cmd->add_option("--output,-o", opt.output, "write to a file instead of stdout");
  };

  auto* check = app.add_subcommand("check", "parse a sentence in S_IE");
  addCommon(check, true);
  auto* nest = app.add_subcommand("nesting", "nesting depth of the first derivation");
  addCommon(nest, true);
  auto* lvl = app.add_subcommand("level", "run the MaN leveling algorithm");
  addCommon(lvl, false);
  auto* ecfg = app.add_subcommand("export-cfg", "extract the context-free grammar");
  addCommon(ecfg, false);
  auto* eacg = app.add_subcommand("export-acg", "extract the abstract categorial grammar");
  addCommon(eacg, false);
  auto* pcfg = app.add_subcommand("parse-cfg", "parse with an exported CFG");
  addCommon(pcfg, true, true);
  auto* cmp = app.add_subcommand("compare", "compare S_IE derivability with CFG membership");
  addCommon(cmp, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check)) return cmdCheck(opt, false);
    if (app.got_subcommand(nest)) return cmdCheck(opt, true);
    if (app.got_subcommand(lvl)) return cmdLevel(opt);
    if (app.got_subcommand(ecfg)) return cmdExportCfg(opt);
    if (app.got_subcommand(eacg)) return cmdExportAcg(opt);
    if (app.got_subcommand(pcfg)) return cmdParseCfg(opt);
    if (app.got_subcommand(cmp)) return cmdCompare(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
