#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "nupn/cli.hpp"
#include "support/fixtures.hpp"

using namespace nupn;
using namespace fixtures;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string expect_parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    FAIL("no parse error for:\n" << text);
    return {};
}

std::vector<std::string> corpus_nets() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(NUPN_CORPUS_DIR))
        if (e.is_regular_file()) out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("the Fig. 1 file parses to a valid net") {
    auto ln = load(parse(cli::read_file(corpus("fig1.nu"))));
    CHECK(validate_net(ln.net).empty());
    Fig1 f;
    CHECK(ln.net.places() == f.net.places());
    CHECK(alpha_equiv(ln.initial, f.initial()));
    auto x = *ln.net.find_variable("x");
    auto y = *ln.net.find_variable("y");
    CHECK(ln.net.input_label(0, 0) == ArcLabel{x, y});
    CHECK(ln.net.is_fresh(*ln.net.find_variable("nu1")));
}

TEST_CASE("the Fig. 5 file parses to a reset net") {
    auto doc = parse(cli::read_file(corpus("fig5.reset")));
    CHECK(doc.kind == NetKind::reset);
    auto resets = std::count_if(doc.arcs.begin(), doc.arcs.end(), [](const ArcDecl& a) { return a.type == ArcType::reset; });
    CHECK(resets == 1);
    auto ln = load(doc);
    REQUIRE(ln.source);
    CHECK(ln.source->control == std::vector<FlowArc>{{1, 0}});
}

TEST_CASE("parse errors carry line and column") {
    auto msg = expect_parse_error("net nu n\nplace p\ntrans t\narc p -> t nu\n");
    CHECK(msg == "4:12: fresh variable on input arc");

    CHECK(expect_parse_error("place p\n").find("1:1:") == 0);
    CHECK(expect_parse_error("net nu n\nplace p\nplace p\n").find("duplicate declaration") != std::string::npos);
    CHECK(expect_parse_error("net nu n\nplace p\narc p -> t x\n").find("undeclared transition 't'") != std::string::npos);
    CHECK(expect_parse_error("net pt n\nplace p\ntrans t\narc t -> p nu\n").find("fresh variables") !=
          std::string::npos);
    CHECK(expect_parse_error("net reset n\nplace p\ntrans t\narc p -> t x x\n").find("weight 1") != std::string::npos);
    CHECK(expect_parse_error("net nu n\nplace p\ntrans t\nreset p -> t\n").find("not allowed") != std::string::npos);
    CHECK(expect_parse_error("net pt n\nplace p\nmarking p = {a:1}\n").find("'.' tokens") != std::string::npos);
    CHECK(expect_parse_error("net nu n\nplace p\nmarking p = {a:1}\nmarking p = {b:1}\n").find("duplicate marking") !=
          std::string::npos);
    CHECK(expect_parse_error("net nu n\nplace p\nmarking p = {_3:1}\n").find("reserved") != std::string::npos);
    CHECK(expect_parse_error("net nu n\nplace p\nmarking p = {a:}\n").find("3:") == 0);
    CHECK(expect_parse_error("net nu n\nwhat p\n") == "2:1: unknown keyword 'what'");
}

TEST_CASE("render is a normal form") {
    for (const auto& path : corpus_nets()) {
        CAPTURE(path);
        auto doc = parse(cli::read_file(path));
        auto text = render(doc);
        CHECK(parse(text) == doc);
        CHECK(render(parse(text)) == text);
    }
    auto messy = "# dropped\nnet   nu  m\nplace p\n\n  trans t # trailing\narc p->t x\narc t -> p x\nmarking p={b:2,a:1}\n";
    CHECK(render(parse(messy)) ==
          "net nu m\nplace p\ntrans t\narc p -> t x\narc t -> p x\nmarking p = {a:1,b:2}\n");
}

TEST_CASE("canon output for the marking with three names") {
    std::string text = "net nu ex\nplace p1\nplace p2\nmarking p1 = {a:2,b:1,c:1}\nmarking p2 = {b:1,c:1}\n";
    auto ln = load(parse(text));
    CHECK(to_string(canonicalize(ln.net, ln.initial), ln.net.places()) == "{{p1:2},{p1:1,p2:1},{p1:1,p2:1}}");
}

TEST_CASE("cover witnesses replay through the replay command") {
    auto dir = std::filesystem::temp_directory_path() / "nupn_test_io";
    std::filesystem::create_directories(dir);
    auto r = run({"cover", corpus("fig4-right.nu"), "--target", corpus("targets/two-names.nu")});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("verdict: coverable") == 0);
    std::size_t fires = 0;
    for (std::size_t pos = 0; (pos = r.out.find("\nfire ", pos)) != std::string::npos; ++pos) ++fires;
    CHECK(fires == 2);
    auto report = (dir / "cover.txt").string();
    std::ofstream(report) << r.out;
    auto rep = run({"replay", corpus("fig4-right.nu"), report});
    CHECK(rep.status == 0);
    CHECK(rep.out == "replay: ok\nsteps: 2\ncanon: {{p1:1},{p2:1},{p2:1}}\n");

    std::ofstream(report) << "fire t {x=.,nu=.}\n";
    auto bad = run({"replay", corpus("fig4-right.nu"), report});
    CHECK(bad.status == 1);
    CHECK(bad.out.find("replay: failed at step 1") == 0);
}

TEST_CASE("analysis witnesses replay") {
    auto dir = std::filesystem::temp_directory_path() / "nupn_test_io";
    std::filesystem::create_directories(dir);
    for (const auto& cmd : {"terminates", "bounded"})
        for (const auto& net : {"fig4-left.nu", "fig4-right.nu", "sessions.nu", "large.reset", "mutex.pt"}) {
            CAPTURE(cmd, net);
            auto r = run({cmd, corpus(net)});
            auto report = (dir / "report.txt").string();
            std::ofstream(report) << r.out;
            CHECK(run({"replay", corpus(net), report}).status == 0);
        }
}

TEST_CASE("exit codes") {
    CHECK(run({"cover", corpus("fig4-right.nu"), "--target", corpus("targets/two-names.nu")}).status == 0);
    auto b = run({"bounded", corpus("fig4-left.nu")});
    CHECK(b.status == 1);
    CHECK(b.out.find("verdict: unbounded") == 0);
    CHECK(b.out.find("pump-from: {{p1:1}}") != std::string::npos);
    CHECK(run({"bounded", corpus("cycle.pt")}).status == 0);
    CHECK(run({"terminates", corpus("deadlock.nu")}).status == 0);
    CHECK(run({"reach", corpus("fig4-right.nu"), "--target", corpus("targets/two-names.nu")}).status == 3);
    CHECK(run({"cover", corpus("large.reset"), "--target", corpus("targets/large-c3.nu"), "--limit-basis", "5"})
              .status == 3);

    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"canon"}).status == 2);
    CHECK(run({"canon", corpus("missing.nu")}).status == 2);
    CHECK(run({"cover", corpus("fig1.nu")}).status == 2);
    CHECK(run({"--help"}).status == 0);

    auto v = run({"validate", corpus("fig1.nu")});
    CHECK(v.status == 0);
    CHECK(v.out == "kind: nu\nnormal: no\nvalid\n");
}

TEST_CASE("translate matches the figures") {
    auto r = run({"translate", corpus("fig5.reset")});
    REQUIRE(r.status == 0);
    CHECK(r.out == cli::read_file(corpus("golden/fig5.nu")));
    auto ln = load(parse(r.out));
    CHECK(ln.kind == NetKind::nu);
    CHECK(canonicalize(ln.initial) == canonicalize(load(parse(cli::read_file(corpus("fig5.reset")))).initial));
}

TEST_CASE("targets keep shared names and do not rename the witness") {
    auto ln = load(parse(cli::read_file(corpus("fig2-left.nu"))));
    auto target = ln.target(parse_markings("marking p1 = {b:1}\nmarking p3 = {z:1}\n"));
    auto bname = *ln.names.find("b");
    CHECK(target[1].contains(bname));
    CHECK_FALSE(ln.names.find("z"));
}
