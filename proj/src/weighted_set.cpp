#include "dmh/weighted_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dmh {

WeightedSet WeightedSet::make(std::span<const WeightedEntry> entries) {
    WeightedSet set;
    set.entries_.reserve(entries.size());
    std::unordered_set<ElementId> seen;
    seen.reserve(entries.size());
    for (const auto& e : entries) {
        if (!std::isfinite(e.weight)) {
            throw validation_error("weight of element " + std::to_string(e.id) + " is not finite");
        }
        if (e.weight < 0.0) {
            throw validation_error("negative weight for element " + std::to_string(e.id));
        }
        if (!seen.insert(e.id).second) {
            throw validation_error("duplicate element id " + std::to_string(e.id));
        }
        if (e.weight == 0.0) {
            continue;
        }
        set.entries_.push_back(e);
        set.l1_ += e.weight;
    }
    return set;
}

WeightedSet WeightedSet::scaled_by_pow2(int exponent) const {
    WeightedSet out;
    out.entries_.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.entries_.push_back({e.id, std::ldexp(e.weight, exponent)});
        out.l1_ += out.entries_.back().weight;
    }
    return out;
}

double exact_jaccard(const WeightedSet& x, const WeightedSet& y) {
    if (x.empty() && y.empty()) {
        throw validation_error("exact_jaccard: both sets are empty");
    }
    std::unordered_map<ElementId, double> other;
    other.reserve(y.l0());
    for (const auto& e : y.entries()) {
        other.emplace(e.id, e.weight);
    }
    double min_sum = 0.0;
    double max_sum = 0.0;
    for (const auto& e : x.entries()) {
        auto it = other.find(e.id);
        if (it == other.end()) {
            max_sum += e.weight;
            continue;
        }
        min_sum += std::min(e.weight, it->second);
        max_sum += std::max(e.weight, it->second);
        other.erase(it);
    }
    for (const auto& [id, w] : other) {
        max_sum += w;
    }
    return min_sum / max_sum;
}

void require_nonempty(const WeightedSet& x, std::string_view what) {
    if (x.empty()) {
        throw validation_error(std::string(what) + ": weighted set is empty");
    }
}

WeightedSet parse_set_line(std::string_view line) {
    std::vector<WeightedEntry> entries;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
            ++pos;
        }
        if (pos == line.size()) {
            break;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') {
            ++end;
        }
        const std::string_view token = line.substr(pos, end - pos);
        const auto colon = token.find(':');
        if (colon == std::string_view::npos) {
            throw validation_error("malformed token '" + std::string(token) + "', expected id:weight");
        }
        ElementId id = 0;
        const auto id_part = token.substr(0, colon);
        const auto [id_end, id_ec] = std::from_chars(id_part.data(), id_part.data() + id_part.size(), id);
        if (id_ec != std::errc{} || id_end != id_part.data() + id_part.size()) {
            throw validation_error("malformed element id in token '" + std::string(token) + "'");
        }
        // strtod rather than from_chars<double>, which libstdc++ 11 lacks
        const std::string weight_part(token.substr(colon + 1));
        char* weight_end = nullptr;
        const double weight = std::strtod(weight_part.c_str(), &weight_end);
        if (weight_part.empty() || weight_end != weight_part.c_str() + weight_part.size()) {
            throw validation_error("malformed weight in token '" + std::string(token) + "'");
        }
        entries.push_back({id, weight});
        pos = end;
    }
    return WeightedSet::make(entries);
}

std::string format_set_line(const WeightedSet& x) {
    std::ostringstream out;
    out.precision(17);
    bool first = true;
    for (const auto& e : x.entries()) {
        if (!first) {
            out << ' ';
        }
        first = false;
        out << e.id << ':' << e.weight;
    }
    return out.str();
}

std::vector<WeightedSet> read_sets(std::istream& in) {
    std::vector<WeightedSet> sets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        try {
            sets.push_back(parse_set_line(line));
        } catch (const validation_error& e) {
            throw validation_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return sets;
}

void write_sets(std::ostream& out, std::span<const WeightedSet> sets) {
    for (const auto& s : sets) {
        out << format_set_line(s) << '\n';
    }
}

} // namespace dmh
