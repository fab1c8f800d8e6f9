#include "amrsl/adapters.hpp"

#include "amrsl/errors.hpp"
#include "amrsl/penman.hpp"

namespace amrsl {
namespace {

// Splits "<HEAD> <id>\t<payload>" into (head, id, payload).
struct Response {
  std::string head;
  std::string id;
  std::string payload;
  bool has_payload = false;
};

Response parse_response(const std::string& line) {
  Response r;
  auto tab = line.find('\t');
  std::string prefix = line.substr(0, tab);
  if (tab != std::string::npos) {
    r.payload = line.substr(tab + 1);
    r.has_payload = true;
  }
  auto space = prefix.find(' ');
  r.head = prefix.substr(0, space);
  if (space != std::string::npos) r.id = prefix.substr(space + 1);
  return r;
}

std::string expect_line(ChildProcess& p) {
  auto line = p.read_line();
  if (!line) throw AdapterError("adapter '" + p.command() + "' closed its output");
  return *line;
}

[[noreturn]] void protocol_error(const ChildProcess& p, const std::string& line,
                                 const std::string& expected) {
  throw AdapterError("adapter '" + p.command() + "' sent '" + line + "', expected " + expected);
}

}  // namespace

std::string normalize_text(std::string_view text) { return join_tokens(split_tokens(text)); }

std::optional<AmrGraph> ExternalParser::parse(const Sentence& s) {
  process_.write_line("PARSE " + s.id + "\t" + join_tokens(s.tokens));
  const auto line = expect_line(process_);
  const auto r = parse_response(line);
  if (r.id != s.id) protocol_error(process_, line, "a reply for '" + s.id + "'");
  if (r.head == "FAIL") return std::nullopt;
  if (r.head != "AMR" || !r.has_payload) protocol_error(process_, line, "AMR or FAIL");
  try {
    return parse_penman(r.payload, ParseMode::kLenient);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string ExternalGenerator::generate(const std::string& id, const AmrGraph& g) {
  process_.write_line("GEN " + id + "\t" + serialize_penman(g, Layout::kSingleLine));
  const auto line = expect_line(process_);
  const auto r = parse_response(line);
  if (r.head != "TXT" || r.id != id || !r.has_payload) {
    protocol_error(process_, line, "TXT " + id);
  }
  return r.payload;
}

std::vector<ActionSequence> ExternalProposer::propose(const ProposalRequest& req) {
  process_.write_line("PROPOSE " + req.id + " " + std::to_string(req.samples) + " " +
                      std::to_string(req.seed) + "\t" + join_tokens(req.sentence.tokens) + "\t" +
                      format_actions(req.current));
  std::vector<ActionSequence> out;
  while (true) {
    const auto line = expect_line(process_);
    const auto r = parse_response(line);
    if (r.id != req.id) protocol_error(process_, line, "a reply for '" + req.id + "'");
    if (r.head == "END") break;
    if (r.head != "CAND") protocol_error(process_, line, "CAND or END");
    try {
      out.push_back(parse_actions(r.payload));
    } catch (const InputError&) {
      out.emplace_back();
    }
  }
  return out;
}

LookupParser::LookupParser(const Corpus& corpus) {
  for (const auto& rec : corpus) add(join_tokens(rec.sentence.tokens), rec.graph);
}

void LookupParser::add(std::string_view text, AmrGraph g) {
  graphs_.insert_or_assign(normalize_text(text), std::move(g));
}

std::optional<AmrGraph> LookupParser::parse(const Sentence& s) {
  auto it = graphs_.find(normalize_text(join_tokens(s.tokens)));
  if (it == graphs_.end()) return std::nullopt;
  return it->second;
}

}  // namespace amrsl
