#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "mee/text_io.hpp"

using namespace mee;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MEE_TEST_DATA) + "/" + name; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ClassifyLanguage) {
    auto r = run({"classify", "--language", data("ihsb.lang")});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_TRUE(has(r.out, "P-ihsb+")) << r.out;
    auto hard = run({"classify", "--language", data("one_in_three.lang")});
    EXPECT_TRUE(has(hard.out, "coNP-hard-nonschaefer")) << hard.out;
}

TEST(Cli, ClassifyNeedsExactlyOneInput) {
    EXPECT_EQ(run({"classify"}).code, cli::kMalformed);
    EXPECT_EQ(run({"classify", "--language", data("ihsb.lang"), "--basis", data("or.basis")}).code, cli::kMalformed);
}

TEST(Cli, MinimizeWithStats) {
    auto r = run({"minimize", "--formula", data("chain.cnf"), "--stats"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_TRUE(has(r.out, "output_clauses=2")) << r.out;
    auto pos = r.out.find("algorithm=");
    auto body = r.out.substr(0, pos);
    auto f = parse_cnf(body);
    EXPECT_EQ(f.num_clauses(), 2);
}

TEST(Cli, MinimizeWritesOutFile) {
    const auto path = std::filesystem::temp_directory_path() / "mee_cli_test_out.cnf";
    auto r = run({"minimize", "--formula", data("ihsb_random.cnf"), "--out", path.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto f = load_cnf(path.string());
    EXPECT_TRUE(equivalent(f, load_cnf(data("ihsb_random.cnf"))));
    EXPECT_EQ(f.num_clauses(), 1);
    std::filesystem::remove(path);
}

TEST(Cli, MissingFileIsMalformedOrResource) {
    auto r = run({"minimize", "--formula", data("does_not_exist.cnf")});
    EXPECT_NE(r.code, cli::kOk);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MinimizePost) {
    auto r = run({"minimize-post", "--basis", data("or.basis"), "--formula", data("or_redundant.bf"), "--measure",
                  "literals"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_TRUE(has(r.out, "min_size=2")) << r.out;
    auto mixed = run({"minimize-post", "--basis", data("mixed.basis"), "--formula", data("or_redundant.bf"),
                      "--measure", "gates"});
    EXPECT_EQ(mixed.code, cli::kClassification);
}

TEST(Cli, Irreducible) {
    auto yes = run({"irreducible", "--relation", data("or3.rel")});
    EXPECT_EQ(yes.code, cli::kOk);
    EXPECT_TRUE(has(yes.out, "irreducible=true"));
    auto no = run({"irreducible", "--relation", data("split.rel")});
    EXPECT_EQ(no.code, cli::kNegative);
}

TEST(Cli, Equiv) {
    auto r = run({"equiv", "--a", data("or_redundant.bf"), "--b", data("or_swapped.bf"), "--basis", data("or.basis")});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_TRUE(has(r.out, "equivalent=true"));
}

TEST(Cli, GenRandomIsDeterministic) {
    std::vector<std::string> args{"gen-random", "--language", data("ihsb.lang"), "--vars", "4", "--clauses", "5",
                                  "--seed", "42"};
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(parse_cnf(a.out).num_clauses(), 5);
}

TEST(Cli, OracleMinCnf) {
    auto r = run({"oracle", "min-cnf", "--formula", data("chain.cnf"), "--max-clauses", "3"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_TRUE(has(r.out, "count=2")) << r.out;
    EXPECT_EQ(parse_cnf(r.out.substr(r.out.find('\n') + 1)).num_clauses(), 2);
}

TEST(Cli, GadgetHornDnf) {
    auto r = run({"gadget", "horn-dnf", "--dnf", data("horn.dnf")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(parse_cnf(r.out).num_clauses(), 2);
}

TEST(Cli, UnknownSubcommand) { EXPECT_EQ(run({"frobnicate"}).code, cli::kMalformed); }
