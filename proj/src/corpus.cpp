#include "amrsl/corpus.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "amrsl/errors.hpp"

namespace amrsl {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

int to_int(std::string_view s, std::string_view field) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("bad number '" + std::string(s) + "' in alignment '" +
                     std::string(field) + "'");
  }
  return v;
}

// Splits "# ::id x ::date y" into (key, value) pairs. snt and tok consume the
// rest of the line.
void parse_metadata_line(std::string_view line,
                         std::vector<std::pair<std::string, std::string>>& out) {
  auto rest = trim(line.substr(1));
  while (rest.starts_with("::")) {
    rest.remove_prefix(2);
    auto key_end = rest.find_first_of(" \t");
    std::string key(rest.substr(0, key_end));
    rest = key_end == std::string_view::npos ? std::string_view{} : trim(rest.substr(key_end));
    std::string_view value = rest;
    if (key != "snt" && key != "tok") {
      auto next = rest.find(" ::");
      if (next != std::string_view::npos) {
        value = trim(rest.substr(0, next));
        rest = trim(rest.substr(next));
      } else {
        rest = {};
      }
    } else {
      rest = {};
    }
    out.emplace_back(std::move(key), std::string(value));
  }
}

CorpusRecord build_record(std::vector<std::pair<std::string, std::string>> fields,
                          std::string_view penman, int penman_line, ParseMode mode,
                          std::size_t index, const std::string& source) {
  const std::string where = source + ": record " + std::to_string(index + 1);
  CorpusRecord rec;
  std::optional<std::string> snt, tok, align;
  for (auto& [key, value] : fields) {
    if (key == "id") {
      rec.sentence.id = value;
    } else if (key == "snt") {
      snt = value;
    } else if (key == "tok") {
      tok = value;
    } else if (key == "alignments") {
      align = value;
    } else {
      rec.metadata.emplace_back(key, value);
    }
  }
  if (!snt) throw InputError(where + ": missing '# ::snt' line");
  if (trim(penman).empty()) throw InputError(where + ": missing PENMAN block");
  if (rec.sentence.id.empty()) rec.sentence.id = "record-" + std::to_string(index + 1);
  rec.sentence.text = *snt;
  rec.sentence.tokens = split_tokens(tok ? *tok : *snt);
  try {
    rec.graph = parse_penman(penman, mode, penman_line);
  } catch (const ParseError& e) {
    throw InputError(where + ": " + e.what());
  }
  if (align) {
    try {
      rec.alignment = parse_alignment(*align);
      validate_alignment(rec.graph, rec.sentence, *rec.alignment);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return rec;
}

}  // namespace

std::optional<std::string> CorpusRecord::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Alignment parse_alignment(std::string_view field) {
  Alignment al;
  for (const auto& item : split_tokens(field)) {
    auto bar = item.find('|');
    auto dash = item.find('-');
    if (bar == std::string::npos || dash == std::string::npos || dash > bar) {
      throw InputError("malformed alignment '" + item + "', expected start-end|var");
    }
    std::string_view view(item);
    TokenSpan span{to_int(view.substr(0, dash), item),
                   to_int(view.substr(dash + 1, bar - dash - 1), item)};
    std::string var(view.substr(bar + 1));
    if (var.empty()) throw InputError("alignment '" + item + "' has no variable");
    if (!al.emplace(var, span).second) {
      throw InputError("variable '" + var + "' aligned twice");
    }
  }
  return al;
}

std::string format_alignment(const Alignment& al) {
  std::string out;
  for (const auto& [var, span] : al) {
    if (!out.empty()) out += ' ';
    out += std::to_string(span.start) + "-" + std::to_string(span.end) + "|" + var;
  }
  return out;
}

Corpus parse_corpus(std::string_view text, ParseMode mode, const std::string& source) {
  Corpus corpus;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string penman;
  int penman_line = 0;
  bool in_block = false;
  bool saw_metadata = false;

  auto flush = [&] {
    if (in_block && (saw_metadata || !trim(penman).empty())) {
      corpus.push_back(build_record(std::move(fields), penman, penman_line, mode,
                                    corpus.size(), source));
    }
    fields.clear();
    penman.clear();
    in_block = false;
    saw_metadata = false;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank(line)) {
      flush();
    } else if (line.front() == '#' && penman.empty()) {
      in_block = true;
      if (trim(line.substr(1)).starts_with("::")) {
        parse_metadata_line(line, fields);
        saw_metadata = true;
      }
    } else {
      if (penman.empty()) penman_line = line_no;
      in_block = true;
      penman.append(line);
      penman += '\n';
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  check_unique_ids(corpus);
  return corpus;
}

Corpus read_corpus(const std::filesystem::path& path, ParseMode mode) {
  return parse_corpus(read_file(path), mode, path.string());
}

std::string format_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& rec : corpus) {
    out += "# ::id " + rec.sentence.id + "\n";
    out += "# ::snt " + rec.sentence.text + "\n";
    out += "# ::tok " + join_tokens(rec.sentence.tokens) + "\n";
    if (rec.alignment) out += "# ::alignments " + format_alignment(*rec.alignment) + "\n";
    for (const auto& [k, v] : rec.metadata) out += "# ::" + k + " " + v + "\n";
    out += serialize_fragments(rec.graph);
    out += "\n\n";
  }
  return out;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, format_corpus(corpus));
}

void check_unique_ids(const Corpus& corpus) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!seen.insert(corpus[i].sentence.id).second) {
      throw InputError("record " + std::to_string(i + 1) + ": duplicate id '" +
                       corpus[i].sentence.id + "'");
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

}  // namespace amrsl
