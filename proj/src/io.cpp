#include "fca/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fca {

using nlohmann::json;

std::string to_pbm(const Window& w, bool binary_format) {
    require(w.alphabet_size() == 2, Err::InvalidArgument, "PBM export is binary-only");
    std::string out = binary_format ? "P4\n" : "P1\n";
    out += std::to_string(w.width()) + " " + std::to_string(w.height()) + "\n";
    if (!binary_format) {
        for (int y = w.height() - 1; y >= 0; --y) {
            for (int x = 0; x < w.width(); ++x) {
                out += w.get(x, y) ? '1' : '0';
                out += (x + 1 < w.width()) ? ' ' : '\n';
            }
        }
        return out;
    }
    int bpr = (w.width() + 7) / 8;
    for (int y = w.height() - 1; y >= 0; --y) {
        for (int b = 0; b < bpr; ++b) {
            uint8_t byte = 0;
            for (int i = 0; i < 8; ++i) {
                int x = b * 8 + i;
                if (x < w.width() && w.get(x, y)) byte |= 0x80 >> i;
            }
            out += static_cast<char>(byte);
        }
    }
    return out;
}

Window from_pbm(const std::string& data) {
    require(data.size() >= 2 && data[0] == 'P' && (data[1] == '1' || data[1] == '4'), Err::ParseError,
            "not a PBM file");
    bool binary = data[1] == '4';
    size_t pos = 2;
    auto skip_ws = [&]() {
        while (pos < data.size()) {
            if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (isspace(static_cast<unsigned char>(data[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&]() {
        skip_ws();
        int v = 0;
        bool any = false;
        while (pos < data.size() && isdigit(static_cast<unsigned char>(data[pos]))) {
            v = v * 10 + (data[pos] - '0');
            ++pos;
            any = true;
        }
        require(any, Err::ParseError, "bad PBM header");
        return v;
    };
    int w = read_int(), h = read_int();
    Window win(w, h, Boundary::Zero, 2, 0);
    if (binary) {
        require(pos < data.size() && isspace(static_cast<unsigned char>(data[pos])), Err::ParseError,
                "bad P4 separator");
        ++pos;
        int bpr = (w + 7) / 8;
        require(data.size() - pos >= static_cast<size_t>(bpr) * h, Err::ParseError, "truncated P4 data");
        for (int row = 0; row < h; ++row) {
            int y = h - 1 - row;
            for (int x = 0; x < w; ++x) {
                uint8_t byte = static_cast<uint8_t>(data[pos + static_cast<size_t>(row) * bpr + x / 8]);
                win.set(x, y, (byte >> (7 - x % 8)) & 1);
            }
        }
        return win;
    }
    for (int row = 0; row < h; ++row) {
        int y = h - 1 - row;
        for (int x = 0; x < w; ++x) {
            skip_ws();
            require(pos < data.size() && (data[pos] == '0' || data[pos] == '1'), Err::ParseError,
                    "bad P1 cell");
            win.set(x, y, data[pos] == '1');
            ++pos;
        }
    }
    return win;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), Err::InvalidArgument, "cannot open for writing: " + path);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), Err::InvalidArgument, "cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

NeighborFamily family_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad family JSON: ") + e.what());
    }
    require(j.contains("neighbor_sets") && j["neighbor_sets"].is_array(), Err::ParseError,
            "family JSON needs a neighbor_sets array");
    std::vector<NeighborSet> sets;
    for (const auto& js : j["neighbor_sets"]) {
        std::vector<IntVec2> cells;
        require(js.is_array(), Err::ParseError, "neighbor set must be an array");
        for (const auto& jc : js) {
            require(jc.is_array() && jc.size() == 2, Err::ParseError, "cell must be [dx,dy]");
            cells.push_back({jc[0].get<int64_t>(), jc[1].get<int64_t>()});
        }
        sets.push_back(NeighborSet::of(std::move(cells)));
    }
    return canonicalize_family(std::move(sets));
}

std::string family_to_json(const NeighborFamily& e) {
    json sets = json::array();
    for (const NeighborSet& s : e.sets) {
        json cells = json::array();
        for (const IntVec2& c : s.cells) cells.push_back({c.x, c.y});
        sets.push_back(cells);
    }
    return json{{"neighbor_sets", sets}}.dump();
}

TMSpec tm_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad machine JSON: ") + e.what());
    }
    TMSpec tm;
    require(j.contains("states") && j.contains("blank") && j.contains("transitions") &&
                j.contains("initial") && j.contains("halt"),
            Err::ParseError, "machine JSON needs states, blank, transitions, initial, halt");
    for (const auto& s : j["states"]) tm.states.push_back(s.get<std::string>());

    std::vector<std::string> symbols;
    auto add_symbol = [&](const std::string& s) {
        if (std::find(symbols.begin(), symbols.end(), s) == symbols.end()) symbols.push_back(s);
    };
    add_symbol(j["blank"].get<std::string>());
    if (j.contains("tape_alphabet"))
        for (const auto& s : j["tape_alphabet"]) add_symbol(s.get<std::string>());
    for (const auto& t : j["transitions"]) {
        add_symbol(t["read"].get<std::string>());
        add_symbol(t["write"].get<std::string>());
    }
    tm.symbols = symbols;
    tm.blank = tm.symbol_id(j["blank"].get<std::string>());
    tm.initial = tm.state_id(j["initial"].get<std::string>());
    tm.halt = tm.state_id(j["halt"].get<std::string>());
    for (const auto& t : j["transitions"]) {
        int st = tm.state_id(t["state"].get<std::string>());
        int rd = tm.symbol_id(t["read"].get<std::string>());
        std::string mv = t["move"].get<std::string>();
        require(mv == "L" || mv == "R", Err::ParseError, "move must be L or R");
        TMSpec::Action act{tm.symbol_id(t["write"].get<std::string>()), mv[0],
                           tm.state_id(t["next"].get<std::string>())};
        int key = st * static_cast<int>(tm.symbols.size()) + rd;
        require(!tm.transitions.count(key), Err::ParseError, "duplicate transition");
        tm.transitions[key] = act;
    }
    tm.validate();
    return tm;
}

std::string state_grid_to_json(const Window& w, const std::vector<std::string>& names) {
    json rows = json::array();
    for (int y = w.height() - 1; y >= 0; --y) {
        json row = json::array();
        for (int x = 0; x < w.width(); ++x) row.push_back(w.get(x, y));
        rows.push_back(row);
    }
    json j{{"width", w.width()}, {"height", w.height()}, {"alphabet", names}, {"rows", rows}};
    return j.dump();
}

Window state_grid_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad grid JSON: ") + e.what());
    }
    int w = j["width"].get<int>(), h = j["height"].get<int>();
    size_t alpha = j["alphabet"].size();
    Window win(w, h, Boundary::Zero, static_cast<uint8_t>(alpha), 0);
    require(j["rows"].size() == static_cast<size_t>(h), Err::ParseError, "row count mismatch");
    for (int row = 0; row < h; ++row) {
        const auto& r = j["rows"][row];
        require(r.size() == static_cast<size_t>(w), Err::ParseError, "column count mismatch");
        for (int x = 0; x < w; ++x) win.set(x, h - 1 - row, r[x].get<uint8_t>());
    }
    return win;
}

std::string scan_to_csv(const ScanResult& r) {
    std::string out = "p,trials,estimate,ci_low,ci_high\n";
    char buf[160];
    for (const ScanRow& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%s,%lld,%.6f,%.6f,%.6f\n", row.p.str().c_str(),
                      static_cast<long long>(row.trials), row.estimate, row.ci_low, row.ci_high);
        out += buf;
    }
    return out;
}

}  // namespace fca
