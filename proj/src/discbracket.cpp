#include "treeavg/discbracket.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "treeavg/errors.hpp"

namespace treeavg {

std::vector<int> SentenceRecord::punct_leaves(
    const std::set<std::string>& punct_labels) const {
  std::vector<int> out;
  for (int i = 0; i < tree.n(); ++i) {
    auto label = tree.label_of(Constituent::single(i));
    if (label && punct_labels.count(*label)) out.push_back(i);
  }
  return out;
}

namespace {

struct Token {
  enum Kind { open, close, atom } kind;
  std::string text;
  size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
    } else if (ch == '(') {
      tokens.push_back({Token::open, "(", i});
      ++i;
    } else if (ch == ')') {
      tokens.push_back({Token::close, ")", i});
      ++i;
    } else {
      size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '(' && line[i] != ')' && line[i] != '\r') {
        ++i;
      }
      tokens.push_back(
          {Token::atom, std::string(line.substr(start, i - start)), start});
    }
  }
  return tokens;
}

[[noreturn]] void fail(size_t column, const std::string& what) {
  throw DataError("column " + std::to_string(column + 1) + ": " + what);
}

struct Parser {
  const std::vector<Token>& tokens;
  size_t pos = 0;
  int depth = 0;
  std::vector<std::pair<Constituent, std::string>> nodes;  // innermost first
  std::vector<std::pair<int, std::string>> terminals;

  const Token& peek() const {
    if (pos >= tokens.size()) {
      throw DataError("unexpected end of line; unbalanced parentheses");
    }
    return tokens[pos];
  }

  Constituent parse_node() {
    const Token& opener = peek();
    if (opener.kind != Token::open) fail(opener.column, "expected '('");
    if (++depth > 4 * kMaxSentenceLength) {
      fail(opener.column, "nesting too deep");
    }
    ++pos;
    const Token& label_tok = peek();
    if (label_tok.kind != Token::atom) {
      fail(label_tok.column, "expected a node label after '('");
    }
    std::string label = label_tok.text;
    ++pos;

    Constituent set;
    bool any = false;
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::close) {
        ++pos;
        break;
      }
      any = true;
      if (t.kind == Token::open) {
        set = set.united(parse_node());
      } else {
        set = set.united(parse_terminal(t));
        ++pos;
      }
    }
    if (!any) fail(opener.column, "empty node");
    nodes.emplace_back(set, std::move(label));
    --depth;
    return set;
  }

  Constituent parse_terminal(const Token& t) {
    size_t eq = t.text.find('=');
    if (eq == std::string::npos) {
      fail(t.column, "expected '<index>=<word>', got '" + t.text + "'");
    }
    std::string index_part = t.text.substr(0, eq);
    std::string word = t.text.substr(eq + 1);
    if (index_part.empty() ||
        index_part.find_first_not_of("0123456789") != std::string::npos) {
      fail(t.column, "terminal index must be a non-negative integer");
    }
    if (word.empty()) fail(t.column, "empty word");
    long index = std::stol(index_part);
    if (index >= kMaxSentenceLength) {
      fail(t.column, "terminal index exceeds the supported maximum");
    }
    for (const auto& [seen, w] : terminals) {
      if (seen == index) fail(t.column, "duplicate terminal index " + index_part);
    }
    terminals.emplace_back(static_cast<int>(index), std::move(word));
    return Constituent::single(static_cast<int>(index));
  }
};

}  // namespace

SentenceRecord parse_discbracket(std::string_view line) {
  std::vector<Token> tokens = tokenize(line);
  if (tokens.empty()) throw DataError("empty line");
  Parser parser{tokens, 0, 0, {}, {}};
  parser.parse_node();
  if (parser.pos != tokens.size()) {
    fail(tokens[parser.pos].column, "trailing input after the tree");
  }

  int n = static_cast<int>(parser.terminals.size());
  std::vector<std::string> words(static_cast<size_t>(n));
  for (const auto& [index, word] : parser.terminals) {
    if (index >= n) {
      throw DataError("terminal indices must form exactly 0.." +
                      std::to_string(n - 1) + "; found index " +
                      std::to_string(index));
    }
    words[static_cast<size_t>(index)] = word;
  }

  std::vector<Constituent> constituents;
  LabelMap labels;
  for (int i = 0; i < n; ++i) constituents.push_back(Constituent::single(i));
  for (auto& [set, label] : parser.nodes) {
    constituents.push_back(set);
    labels.emplace(set, std::move(label));  // first insertion = innermost
  }
  return SentenceRecord{
      ParseTree::create(n, std::move(constituents), std::move(labels),
                        std::move(words))};
}

namespace {

void emit_node(const ParseTree& tree, const Hierarchy& h, int node,
               std::string& out) {
  const auto& cs = tree.constituents();
  const Constituent& c = cs[static_cast<size_t>(node)];
  bool is_root = h.parent[static_cast<size_t>(node)] < 0;
  auto label = tree.label_of(c);

  if (c.size() == 1 && !is_root && !label) {
    int leaf = c.min_leaf();
    out += std::to_string(leaf);
    out += '=';
    out += tree.words()[static_cast<size_t>(leaf)];
    return;
  }
  out += '(';
  out += label ? *label : (is_root ? "ROOT" : "o");
  if (c.size() == 1) {
    int leaf = c.min_leaf();
    out += ' ';
    out += std::to_string(leaf);
    out += '=';
    out += tree.words()[static_cast<size_t>(leaf)];
  } else {
    for (int child : h.children[static_cast<size_t>(node)]) {
      out += ' ';
      emit_node(tree, h, child, out);
    }
  }
  out += ')';
}

}  // namespace

std::string write_discbracket(const SentenceRecord& record) {
  const ParseTree& tree = record.tree;
  if (static_cast<int>(tree.words().size()) != tree.n()) {
    throw DataError("cannot serialize a tree without its tokens");
  }
  Hierarchy h = hierarchy(tree);
  std::string out;
  emit_node(tree, h, h.root, out);
  return out;
}

std::vector<SentenceRecord> read_treebank(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  std::vector<SentenceRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      records.push_back(parse_discbracket(line));
    } catch (const DataError& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (records.empty()) throw DataError(path + ": no trees");
  return records;
}

void write_treebank(const std::string& path,
                    const std::vector<std::string>& lines) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    for (const auto& line : lines) {
      out << line << '\n';
    }
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw DataError(path + ": write failed");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace treeavg
