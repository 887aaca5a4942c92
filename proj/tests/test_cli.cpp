#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(KERRATA_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("kerrata_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& body) {
        const auto p = (dir_ / name).string();
        std::ofstream(p) << body;
        return p;
    }
    std::string path(const std::string& name) { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_F(Cli, BuildReportsBound) {
    const auto dict = file("d.txt", "0110\n0111\n1000\n0010\n");
    const auto r = run("build --dict " + dict + " --k 1 --out " + path("i.kerr"));
    ASSERT_EQ(r.code, 0) << r.out;
    std::uint64_t strings = 0, bound = 0;
    for (const auto& l : lines(r.out)) {
        if (l.rfind("strings ", 0) == 0) strings = std::stoull(l.substr(8));
        if (l.rfind("size_bound ", 0) == 0) bound = std::stoull(l.substr(11));
    }
    EXPECT_GT(strings, 0u);
    EXPECT_LE(strings, bound);
}

TEST_F(Cli, ZeroMismatchesIsOneTrie) {
    const auto dict = file("d.txt", "ab\nba\nbb\n");
    const auto r = run("build --dict " + dict + " --k 0 --out " + path("i.kerr"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("tries 1\n"), std::string::npos) << r.out;
}

TEST_F(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run("build --dict " + file("e.txt", "") + " --k 1 --out " + path("i.kerr")).code, 2);
    const auto bad = run("build --dict " + file("b.txt", "01\n011\n") + " --k 1 --out " + path("i.kerr"));
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("line 2"), std::string::npos) << bad.out;
    EXPECT_EQ(run("build --k 1").code, 2);
    EXPECT_EQ(run("query --index " + path("missing.kerr") + " --q 01").code, 2);
    EXPECT_EQ(run("query --index " + file("junk.kerr", "not an index") + " --q 01").code, 2);
}

TEST_F(Cli, QueryOutputsSortedIds) {
    const auto dict = file("d.txt", "acgt\nacga\ntttt\nacgt\n");
    ASSERT_EQ(run("build --dict " + dict + " --k 1 --mode sampled --fingerprints on --seed 9 --out " + path("i.kerr")).code, 0);
    auto r = run("query --index " + path("i.kerr") + " --q acgt");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"0", "1", "3"}));
    r = run("query --index " + path("i.kerr") + " --q gggg");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    r = run("query --index " + path("i.kerr") + " --q acgt --stats");
    EXPECT_NE(r.out.find("prefix_search_ops "), std::string::npos);
    EXPECT_NE(r.out.find("word_blocks_read "), std::string::npos);
    EXPECT_NE(r.out.find("query_bound "), std::string::npos);
    EXPECT_NE(r.out.find("occ 3"), std::string::npos);
    EXPECT_EQ(run("query --index " + path("i.kerr") + " --q acg").code, 2);
    EXPECT_EQ(run("query --index " + path("i.kerr") + " --q acgx").code, 2);
}

TEST_F(Cli, RepeatedQueriesMatchBruteForce) {
    std::mt19937_64 rng(3);
    std::vector<std::string> dict(30);
    std::string text;
    for (auto& s : dict) {
        for (int j = 0; j < 8; ++j) s += "ab"[rng() % 2];
        text += s + "\n";
    }
    ASSERT_EQ(run("build --dict " + file("d.txt", text) + " --k 2 --out " + path("i.kerr")).code, 0);
    std::string args = "query --index " + path("i.kerr");
    std::vector<std::string> qs(10);
    for (auto& q : qs) {
        for (int j = 0; j < 8; ++j) q += "ab"[rng() % 2];
        args += " --q " + q;
    }
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.out;
    std::string want;
    for (const auto& q : qs) {
        want += "> " + q + "\n";
        for (std::size_t i = 0; i < dict.size(); ++i) {
            int dist = 0;
            for (int j = 0; j < 8; ++j) dist += dict[i][j] != q[j];
            if (dist <= 2) want += std::to_string(i) + "\n";
        }
    }
    EXPECT_EQ(r.out, want);
}

TEST_F(Cli, VerifyPassesAndCatchesFault) {
    std::mt19937_64 rng(5);
    std::string text;
    for (int i = 0; i < 30; ++i) {
        for (int j = 0; j < 12; ++j) text += "01"[rng() % 2];
        text += "\n";
    }
    const auto dict = file("d.txt", text);
    ASSERT_EQ(run("build --dict " + dict + " --k 1 --force-errata --out " + path("ok.kerr")).code, 0);
    auto r = run("verify --index " + path("ok.kerr") + " --trials 0 --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
    r = run("verify --index " + path("ok.kerr") + " --trials 1000 --seed 1 --threads 4");
    EXPECT_EQ(r.code, 0) << r.out;
    ASSERT_EQ(run("build --dict " + dict + " --k 1 --force-errata --fault 1 --out " + path("bad.kerr")).code, 0);
    r = run("verify --index " + path("bad.kerr") + " --trials 500 --seed 1");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out.rfind("FAIL", 0), 0u);
    EXPECT_NE(r.out.find("expected"), std::string::npos);
}

TEST_F(Cli, Fuzz) {
    auto r = run("fuzz --max-d 1 --max-m 1 --max-k 1 --seed 1 --rounds 1");
    EXPECT_EQ(r.code, 0) << r.out;
    r = run("fuzz --max-d 64 --max-m 64 --max-k 2 --seed 7 --rounds 20");
    EXPECT_EQ(r.code, 0) << r.out;
    r = run("fuzz --max-d 16 --max-m 12 --max-k 2 --seed 7 --rounds 50 --fault 2");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("query: "), std::string::npos) << r.out;
    EXPECT_EQ(run("fuzz --max-d 0").code, 2);
}

TEST_F(Cli, MemcapExitsThree) {
    std::mt19937_64 rng(11);
    std::string text;
    for (int i = 0; i < 300; ++i) {
        for (int j = 0; j < 24; ++j) text += "01"[rng() % 2];
        text += "\n";
    }
    const auto r = run("build --dict " + file("d.txt", text) + " --k 4 --memcap-mb 1 --out " + path("i.kerr"));
    EXPECT_EQ(r.code, 3) << r.out;
    EXPECT_EQ(std::system(("KERRATA_MEMCAP_MB=1 " + std::string(KERRATA_CLI) + " build --dict " + path("d.txt") +
                           " --k 4 --out " + path("j.kerr") + " >/dev/null 2>&1")
                              .c_str()) >> 8,
              3);
}
