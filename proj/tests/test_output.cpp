#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>

#include "lidonor/output.hpp"

using namespace lidonor;

TEST_CASE("format_double round trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1.27, 9.228e-6, -1.1012e6, 5.93e8,
                     1e-300, 0.0}) {
        std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv carries a reproducibility header") {
    MaterialParams p = build_materials();
    Table t;
    t.columns = {"x", "y"};
    t.rows = {{1.0, 2.5}, {2.0, 5.0}};
    OutputMeta meta;
    meta.subcommand = "levels";
    meta.params = {{"eps", "0.2"}};

    std::string csv = table_to_csv(t, meta, p);
    std::istringstream in(csv);
    std::string line;
    int header_lines = 0;
    bool saw_version = false, saw_columns = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) {
            ++header_lines;
            if (line.find(kToolVersion) != std::string::npos)
                saw_version = true;
        } else if (!saw_columns) {
            CHECK(line == "x,y");
            saw_columns = true;
        }
    }
    CHECK(header_lines >= 2);
    CHECK(saw_version);
    CHECK(saw_columns);
    CHECK(csv.find("2.5") != std::string::npos);
}

TEST_CASE("csv output is deterministic") {
    MaterialParams p = build_materials();
    Table t;
    t.columns = {"a"};
    t.rows = {{1.0 / 3.0}, {2.0 / 7.0}};
    OutputMeta meta;
    meta.subcommand = "x";
    CHECK(table_to_csv(t, meta, p) == table_to_csv(t, meta, p));
}

TEST_CASE("json output mirrors the table") {
    MaterialParams p = build_materials();
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 2.0}};
    OutputMeta meta;
    meta.subcommand = "coupling";

    nlohmann::json doc = table_to_json(t, meta, p);
    CHECK(doc.contains("meta"));
    CHECK(doc["meta"]["version"] == kToolVersion);
    CHECK(doc["columns"].size() == 2);
    CHECK(doc["rows"][0][1] == 2.0);
}
