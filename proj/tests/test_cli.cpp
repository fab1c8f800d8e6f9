#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "amrsl/corpus.hpp"
#include "amrsl/oracle.hpp"
#include "amrsl/smatch.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome sh(const std::string& command) {
  Outcome o;
  FILE* p = popen((command + " 2>&1").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (auto n = std::fread(buf, 1, sizeof buf, p)) o.out.append(buf, n);
  const int raw = pclose(p);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("amrsl_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& f) const { return (dir / f).string(); }
};

const std::string kBin = AMRSL_BIN;
const std::string kFake = FAKE_ADAPTER;
const std::string kData = TEST_DATA_DIR;

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 1") {
    CHECK(sh(kBin).status == 1);
    CHECK(sh(kBin + " frobnicate").status == 1);
    CHECK(sh(kBin + " smatch /nonexistent /nonexistent").status == 1);
    CHECK(sh(kBin + " --help").status == 0);
  }

  TEST_CASE("bad corpus content exits 1 with the record") {
    Scratch s("bad");
    spit(s / "bad.amr", "# ::id a\n(a / b)\n");
    const auto o = sh(kBin + " oracle " + s / "bad.amr" + " -o " + s / "out.txt");
    CHECK(o.status == 1);
    CHECK(o.out.find("record 1") != std::string::npos);
  }

  TEST_CASE("fixtures, oracle and replay agree") {
    Scratch s("oracle");
    REQUIRE(sh(kBin + " --seed 3 gen-fixtures -n 50 -o " + s / "c.amr").status == 0);
    const auto o = sh(kBin + " oracle " + s / "c.amr" + " -o " + s / "a.txt");
    REQUIRE(o.status == 0);
    CHECK(o.out.find("smatch 1.0000") != std::string::npos);
    const auto r = sh(kBin + " replay " + s / "c.amr " + s / "a.txt -o " + s / "r.amr --strict-root");
    REQUIRE(r.status == 0);
    const auto replayed = amrsl::read_corpus(s / "r.amr");
    const auto gold = amrsl::read_corpus(s / "c.amr");
    std::vector<amrsl::AmrGraph> a, b;
    for (const auto& rec : replayed) a.push_back(rec.graph);
    for (const auto& rec : gold) b.push_back(rec.graph);
    CHECK(amrsl::corpus_smatch(a, b).total.f1 == 1.0);
    // replay reports the same score the oracle did
    CHECK(r.out.find("smatch 1.0000") != std::string::npos);
  }

  TEST_CASE("smatch: exact and hill climbing on small graphs") {
    const auto gold = kData + "/small_gold.amr";
    const auto test = kData + "/small_test.amr";
    const auto hill = sh(kBin + " smatch " + test + " " + gold);
    const auto exact = sh(kBin + " smatch --exact " + test + " " + gold);
    REQUIRE(hill.status == 0);
    REQUIRE(exact.status == 0);
    CHECK(hill.out == exact.out);
    CHECK(hill.out.find("s4\t1.0000\t1.0000\t1.0000") != std::string::npos);
    const auto self = sh(kBin + " smatch " + gold + " " + gold);
    CHECK(self.out.find("total\t1.0000\t1.0000\t1.0000") != std::string::npos);

    const auto js = sh(kBin + " --format jsonl smatch --detail " + test + " " + gold);
    REQUIRE(js.status == 0);
    std::istringstream lines(js.out);
    std::string line, last;
    int records = 0;
    while (std::getline(lines, line)) {
      const auto j = nlohmann::json::parse(line);
      records += j["type"] == "record";
      last = line;
    }
    CHECK(records == 4);
    const auto total = nlohmann::json::parse(last);
    CHECK(total["type"] == "total");
    CHECK(total.contains("detail"));
  }

  TEST_CASE("mining is byte-identical across runs and job counts") {
    Scratch s("mine");
    REQUIRE(sh(kBin + " --seed 4 gen-fixtures -n 40 -o " + s / "c.amr --planted " + s / "p.txt").status == 0);
    const auto base = kBin + " --seed 7 ";
    const auto args = " mine " + s / "c.amr " + s / "p.txt --proposer builtin --epochs 3 --samples 2";
    REQUIRE(sh(base + args + " -o " + s / "a1.txt --report " + s / "r1.txt").status == 0);
    REQUIRE(sh(base + args + " -o " + s / "a2.txt --report " + s / "r2.txt").status == 0);
    REQUIRE(sh(base + "--jobs 2" + args + " -o " + s / "a3.txt --report " + s / "r3.txt").status == 0);
    CHECK(slurp(s / "a1.txt") == slurp(s / "a2.txt"));
    CHECK(slurp(s / "r1.txt") == slurp(s / "r2.txt"));
    CHECK(slurp(s / "a1.txt") == slurp(s / "a3.txt"));
    CHECK_FALSE(slurp(s / "a1.txt").empty());
  }

  TEST_CASE("external proposer failure exits 2 and keeps a checkpoint") {
    Scratch s("fail");
    REQUIRE(sh(kBin + " gen-fixtures -n 10 -o " + s / "c.amr --planted " + s / "p.txt").status == 0);
    const auto o = sh("FAKE_ADAPTER_LIMIT=3 " + kBin + " mine " + s / "c.amr " + s / "p.txt --proposer '" +
                      kFake + " proposer' -o " + s / "out.txt");
    CHECK(o.status == 2);
    CHECK(o.out.find("adapter failure") != std::string::npos);
    CHECK(fs::exists(s / "out.txt"));
  }

  TEST_CASE("adapter commands come from the environment") {
    Scratch s("env");
    spit(s / "gold.amr", "# ::id g1\n# ::snt the boy wants\n(w / want-01 :ARG0 (b / boy))\n");
    spit(s / "table.amr",
         "# ::id g1\n# ::snt the boy wants\n(w / want-01 :ARG0 (b / boy))\n\n"
         "# ::id t1\n# ::snt boy wanting\n(w / want-01 :ARG0 (b / boy))\n");
    spit(s / "cands.tsv", "g1\tgreedy\tboy wanting\ng1\tsampled\tthe boy wants\n");
    const auto o = sh("AMRSL_PARSER_CMD='" + kFake + " parser " + s / "table.amr" + "' " + kBin +
                      " --format jsonl filter-syntext " + s / "gold.amr " + s / "cands.tsv -o " + s / "kept.amr");
    REQUIRE(o.status == 0);
    const auto kept = amrsl::read_corpus(s / "kept.amr");
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].sentence.text == "boy wanting");
    CHECK(o.out.find("duplicate_of_gold") != std::string::npos);
    // no parser at all is a usage error
    CHECK(sh(kBin + " filter-syntext " + s / "gold.amr " + s / "cands.tsv -o " + s / "k2.amr").status == 1);
  }

  TEST_CASE("bleu command") {
    Scratch s("bleu");
    spit(s / "c.txt", "the the the\nsame words here\n");
    spit(s / "r.txt", "the cat\nsame words here\n");
    const auto o = sh(kBin + " bleu " + s / "c.txt " + s / "r.txt");
    REQUIRE(o.status == 0);
    CHECK(o.out.find("19.49") != std::string::npos);
    CHECK(o.out.find("100.00") != std::string::npos);
    spit(s / "short.txt", "one line\n");
    CHECK(sh(kBin + " bleu " + s / "c.txt " + s / "short.txt").status == 1);
  }
}
