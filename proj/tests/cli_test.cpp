#include "rgallery/cli.hpp"

#include <fstream>

#include "doctest.h"

using namespace rgallery;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/rgallery_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

// Strict syntax check over the JSON subset the reports use.
bool well_formed_json(const std::string& s, size_t& i);

bool skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\n' || s[i] == '\t' || s[i] == '\r')) ++i;
    return i < s.size();
}

bool json_string(const std::string& s, size_t& i) {
    if (i >= s.size() || s[i] != '"') return false;
    for (++i; i < s.size(); ++i) {
        if (s[i] == '"') { ++i; return true; }
        if (s[i] == '\\') ++i;
    }
    return false;
}

bool well_formed_json(const std::string& s, size_t& i) {
    if (!skip_ws(s, i)) return false;
    char c = s[i];
    if (c == '{') {
        ++i;
        if (skip_ws(s, i) && s[i] == '}') { ++i; return true; }
        while (true) {
            if (!skip_ws(s, i) || !json_string(s, i)) return false;
            if (!skip_ws(s, i) || s[i] != ':') return false;
            ++i;
            if (!well_formed_json(s, i)) return false;
            if (!skip_ws(s, i)) return false;
            if (s[i] == ',') { ++i; continue; }
            if (s[i] == '}') { ++i; return true; }
            return false;
        }
    }
    if (c == '[') {
        ++i;
        if (skip_ws(s, i) && s[i] == ']') { ++i; return true; }
        while (true) {
            if (!well_formed_json(s, i)) return false;
            if (!skip_ws(s, i)) return false;
            if (s[i] == ',') { ++i; continue; }
            if (s[i] == ']') { ++i; return true; }
            return false;
        }
    }
    if (c == '"') return json_string(s, i);
    if (s.compare(i, 4, "true") == 0) { i += 4; return true; }
    if (s.compare(i, 5, "false") == 0) { i += 5; return true; }
    size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && ((s[i] >= '0' && s[i] <= '9') || s[i] == '.')) ++i;
    return i > start;
}

bool round_trips(const std::string& payload) {
    size_t i = 0;
    if (!well_formed_json(payload, i)) return false;
    while (i < payload.size() && (payload[i] == '\n' || payload[i] == ' ')) ++i;
    return i == payload.size();
}

// Minimal well-formedness check: every opened tag is closed in order.
bool well_formed_xml(const std::string& text) {
    std::vector<std::string> stack;
    size_t i = 0;
    while ((i = text.find('<', i)) != std::string::npos) {
        size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?') continue;
        if (tag.back() == '/') continue;  // self-closing
        if (tag[0] == '/') {
            std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else {
            stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
        }
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("solve emits the full deterministic report") {
    std::string path = write_temp("square.json", R"({"vertices":[[0,0],[2,0],[2,2],[0,2]]})");
    auto r = cli::run({"solve", path, "--no-timing"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "{\"schema\":\"gg/1\",\"input\":{\"n\":4,\"slices_h\":1,\"slices_v\":1,"
          "\"pixel_edges\":1},\"mhsc\":{\"size\":1,\"guards\":[{\"slice\":0,\"rect\":[0,0,2,2],"
          "\"segment\":{\"y\":\"1\",\"x0\":\"0\",\"x1\":\"2\"}}],\"witness\":[0]},"
          "\"mvsc\":{\"size\":1,\"guards\":[{\"slice\":0,\"rect\":[0,0,2,2],"
          "\"segment\":{\"x\":\"1\",\"y0\":\"0\",\"y1\":\"2\"}}],\"witness\":[0]},"
          "\"point_guards\":{\"count\":1,\"bound\":1,\"pixels\":[[0,0]],"
          "\"points\":[[\"1\",\"1\"]]},\"verify\":{\"mhsc_certificate\":true,"
          "\"mvsc_certificate\":true,\"mhsc_covers\":true,\"mvsc_covers\":true,"
          "\"point_covers\":true,\"bound_ok\":true}}\n");
    // Byte-identical on repeat, and syntactically valid JSON.
    auto again = cli::run({"solve", path, "--no-timing"});
    CHECK(again.out == r.out);
    CHECK(round_trips(r.out));
    // With timings the payload carries one extra object.
    auto timed = cli::run({"solve", path});
    CHECK(timed.exit_code == 0);
    CHECK(timed.out.find("\"timings_ms\":{") != std::string::npos);
    CHECK(round_trips(timed.out));

    // Reports on a bigger instance stay well-formed too.
    std::string comb_path = write_temp("comb12.json", domain_to_json(comb(12)));
    auto big = cli::run({"solve", comb_path, "--no-timing"});
    REQUIRE(big.exit_code == 0);
    CHECK(round_trips(big.out));
}

TEST_CASE("solve honors section flags") {
    std::string path =
        write_temp("l.json", R"({"vertices":[[0,0],[4,0],[4,2],[2,2],[2,4],[0,4]]})");
    auto r = cli::run({"solve", path, "--no-timing", "--mhsc"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"mhsc\"") != std::string::npos);
    CHECK(r.out.find("\"mvsc\"") == std::string::npos);
    CHECK(r.out.find("\"point_guards\"") == std::string::npos);
}

TEST_CASE("exact subcommand runs all four oracles") {
    std::string path = write_temp("comb4.json", domain_to_json(comb(4)));
    for (auto [kind, expected] :
         {std::pair{"mhsc", 1}, {"mvsc", 4}, {"msc", 1}, {"point", 4}}) {
        auto r = cli::run({"exact", path, "--exact", kind});
        CAPTURE(kind);
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("\"optimum\":" + std::to_string(expected)) != std::string::npos);
    }
    // The cap guards against oversized instances.
    std::string big = write_temp("comb30.json", domain_to_json(comb(30)));
    auto r = cli::run({"exact", big, "--exact", "mvsc"});
    CHECK(r.exit_code == 1);
    auto r2 = cli::run({"exact", big, "--exact", "mvsc", "--cap", "64"});
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("\"optimum\":30") != std::string::npos);
}

TEST_CASE("generate produces valid polygons for every family") {
    auto r = cli::run({"generate", "--family", "comb", "--k", "7"});
    REQUIRE(r.exit_code == 0);
    CHECK(parse_domain(r.out).size() == 28);

    auto r2 = cli::run({"generate", "--family", "sharpness", "--k", "6"});
    REQUIRE(r2.exit_code == 0);
    parse_domain(r2.out);

    auto r3 = cli::run({"generate", "--family", "random", "--n", "20", "--seed", "7"});
    REQUIRE(r3.exit_code == 0);
    auto r4 = cli::run({"generate", "--family", "random", "--n", "20", "--seed", "7"});
    CHECK(r3.out == r4.out);
}

TEST_CASE("render emits well-formed SVG") {
    std::string path = write_temp("pin.json", domain_to_json(sharpness(4)));
    auto r = cli::run({"render", path});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("<svg") != std::string::npos);
    CHECK(r.out.find("<circle") != std::string::npos);
    CHECK(r.out.find("stroke-dasharray") != std::string::npos);
    CHECK(well_formed_xml(r.out));
}

TEST_CASE("bad input exits with code 1 and a message") {
    auto r = cli::run({"solve", "/nonexistent/file.json"});
    CHECK(r.exit_code == 1);
    CHECK(!r.err.empty());

    std::string bad = write_temp("bad.json", R"({"vertices":[[0,0],[1,1],[2,0],[0,-1]]})");
    auto r2 = cli::run({"solve", bad});
    CHECK(r2.exit_code == 1);

    CHECK(cli::run({"frobnicate"}).exit_code == 1);
    CHECK(cli::run({}).exit_code == 1);
    CHECK(cli::run({"generate", "--family", "sharpness", "--k", "99"}).exit_code == 1);
}

TEST_CASE("solve writes to a file with --out") {
    std::string path = write_temp("sq2.json", R"({"vertices":[[0,0],[2,0],[2,2],[0,2]]})");
    auto r = cli::run({"solve", path, "--no-timing", "--out", "/tmp/rgallery_test_report.json"});
    REQUIRE(r.exit_code == 0);
    std::ifstream in("/tmp/rgallery_test_report.json");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("\"schema\":\"gg/1\"") != std::string::npos);
}
