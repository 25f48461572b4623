#include "mtsc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "mtsc/rng.hpp"

namespace mtsc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void malformed(std::size_t line, const std::string& token, const std::string& why) {
    throw TsFormatError(TsFormatError::Kind::MalformedHeader, line, token, why);
}

struct Header {
    std::string problem_name;
    long declared_dims = -1;
    int univariate = -1;   // -1 unknown, 0 false, 1 true
    int equal_length = -1;
    long declared_length = -1;
    bool class_label_seen = false;
    std::vector<std::string> labels;
};

// Parses one @directive line (already trimmed, starts with '@').
void apply_directive(Header& h, std::string_view body, std::size_t line_no) {
    auto tokens = split_ws(body);
    std::string key = lower(tokens.empty() ? std::string(body) : tokens[0]);
    auto need_value = [&](const char* what) -> const std::string& {
        if (tokens.size() < 2) malformed(line_no, std::string(body), std::string(what) + " requires a value");
        return tokens[1];
    };
    auto parse_bool = [&](const std::string& v) -> bool {
        std::string lv = lower(v);
        if (lv == "true") return true;
        if (lv == "false") return false;
        malformed(line_no, v, "expected true/false");
    };
    auto parse_count = [&](const std::string& v) -> long {
        long n = 0;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
        if (ec != std::errc() || p != v.data() + v.size() || n < 1) {
            malformed(line_no, v, "expected a positive integer");
        }
        return n;
    };

    if (key == "@problemname") {
        h.problem_name = need_value("@problemName");
    } else if (key == "@dimensions") {
        h.declared_dims = parse_count(need_value("@dimensions"));
    } else if (key == "@univariate") {
        h.univariate = parse_bool(need_value("@univariate")) ? 1 : 0;
    } else if (key == "@equallength") {
        h.equal_length = parse_bool(need_value("@equalLength")) ? 1 : 0;
    } else if (key == "@serieslength") {
        h.declared_length = parse_count(need_value("@seriesLength"));
    } else if (key == "@classlabel") {
        h.class_label_seen = true;
        if (tokens.size() < 2) malformed(line_no, std::string(body), "@classLabel requires true/false");
        if (!parse_bool(tokens[1])) {
            malformed(line_no, tokens[1], "@classLabel false: unlabelled data is not supported");
        }
        h.labels.assign(tokens.begin() + 2, tokens.end());
        if (h.labels.empty()) malformed(line_no, std::string(body), "@classLabel true requires a label list");
        for (std::size_t i = 0; i < h.labels.size(); ++i) {
            for (std::size_t j = i + 1; j < h.labels.size(); ++j) {
                if (h.labels[i] == h.labels[j]) {
                    malformed(line_no, h.labels[i], "duplicate class label");
                }
            }
        }
    }
    // Unknown directives (e.g. @timeStamps, @missing) are accepted and ignored.
}

// Parses one comma-separated segment of a data line into out[offset..offset+expected).
// Returns the number of values parsed. expected == 0 means "count, don't store".
std::size_t parse_segment(std::string_view seg, std::size_t line_no, double* out,
                          std::size_t expected) {
    std::size_t count = 0;
    const char* p = seg.data();
    const char* end = p + seg.size();
    while (true) {
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        const char* tok_begin = p;
        double v = 0.0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || next == p) {
            const char* q = p;
            while (q < end && *q != ',') ++q;
            throw TsFormatError(TsFormatError::Kind::NonNumericValue, line_no,
                                std::string(trim(std::string_view(tok_begin, q - tok_begin))),
                                "expected a real number");
        }
        p = next;
        if (!std::isfinite(v)) {
            throw TsFormatError(TsFormatError::Kind::NonNumericValue, line_no,
                                std::string(tok_begin, p - tok_begin),
                                "non-finite observation rejected");
        }
        if (out != nullptr) {
            if (count >= expected) {
                throw TsFormatError(TsFormatError::Kind::RaggedSeries, line_no,
                                    std::string(tok_begin, p - tok_begin),
                                    "more observations than the established series length");
            }
            out[count] = v;
        }
        ++count;
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        if (p == end) break;
        if (*p != ',') {
            throw TsFormatError(TsFormatError::Kind::NonNumericValue, line_no,
                                std::string(1, *p), "expected ',' between observations");
        }
        ++p;
        if (p == end) {
            throw TsFormatError(TsFormatError::Kind::NonNumericValue, line_no, ",",
                                "trailing comma");
        }
    }
    return count;
}

// Splits a data line on ':' into segment views. The final segment is the label.
std::vector<std::string_view> split_segments(std::string_view line) {
    std::vector<std::string_view> segs;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ':') {
            segs.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return segs;
}

}  // namespace

const char* TsFormatError::kind_name(Kind k) {
    switch (k) {
        case Kind::MalformedHeader: return "MalformedHeader";
        case Kind::DimensionCountMismatch: return "DimensionCountMismatch";
        case Kind::RaggedSeries: return "RaggedSeries";
        case Kind::UnknownClassLabel: return "UnknownClassLabel";
        case Kind::NonNumericValue: return "NonNumericValue";
    }
    return "TsFormatError";
}

std::string TsFormatError::format(Kind kind, std::size_t line, const std::string& token,
                                  const std::string& detail) {
    std::ostringstream os;
    os << kind_name(kind) << " at line " << line;
    if (!token.empty()) os << ", token '" << token << "'";
    os << ": " << detail;
    return os.str();
}

std::vector<std::size_t> Dataset::class_histogram() const {
    std::vector<std::size_t> hist(class_labels.size(), 0);
    for (const Case& c : cases) {
        if (c.label >= 0 && static_cast<std::size_t>(c.label) < hist.size()) ++hist[c.label];
    }
    return hist;
}

void Dataset::validate() const {
    if (dims < 1) throw std::logic_error("dataset '" + name + "': d must be >= 1");
    if (length < 1) throw std::logic_error("dataset '" + name + "': m must be >= 1");
    if (class_labels.size() < 2) throw std::logic_error("dataset '" + name + "': c must be >= 2");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        if (c.dims != dims || c.length != length || c.values.size() != dims * length) {
            throw std::logic_error("dataset '" + name + "': case " + std::to_string(i) +
                                   " has inconsistent shape");
        }
        if (c.label < 0 || static_cast<std::size_t>(c.label) >= class_labels.size()) {
            throw std::logic_error("dataset '" + name + "': case " + std::to_string(i) +
                                   " has out-of-range label");
        }
        for (double v : c.values) {
            if (!std::isfinite(v)) {
                throw std::logic_error("dataset '" + name + "': case " + std::to_string(i) +
                                       " contains a non-finite value");
            }
        }
    }
}

DatasetSummary summarise(const Dataset& train, const Dataset& test) {
    return DatasetSummary{train.size(), test.size(), train.dims, train.length,
                          train.num_classes()};
}

Dataset parse_ts(std::istream& in, const std::string& source_name) {
    Header header;
    Dataset ds;
    std::string line;
    std::size_t line_no = 0;
    bool in_data = false;
    bool shape_established = false;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;

        if (!in_data) {
            if (sv.front() != '@') {
                malformed(line_no, std::string(sv.substr(0, 32)),
                          "expected a header directive before @data");
            }
            if (lower(split_ws(sv)[0]) == "@data") {
                if (!header.class_label_seen) {
                    malformed(line_no, "@data", "@classLabel missing from header");
                }
                if (header.equal_length == 0) {
                    malformed(line_no, "@equalLength",
                              "unequal-length series are not supported");
                }
                if (header.univariate == 1 && header.declared_dims > 1) {
                    malformed(line_no, "@dimensions",
                              "@univariate true conflicts with @dimensions > 1");
                }
                in_data = true;
                ds.name = header.problem_name.empty() ? source_name : header.problem_name;
                ds.class_labels = header.labels;
                continue;
            }
            apply_directive(header, sv, line_no);
            continue;
        }

        // Data line.
        auto segs = split_segments(sv);
        if (segs.size() < 2) {
            throw TsFormatError(TsFormatError::Kind::DimensionCountMismatch, line_no,
                                std::string(sv.substr(0, 32)),
                                "a case needs at least one ':'-separated series plus a label");
        }
        std::size_t body_dims = segs.size() - 1;

        if (!shape_established) {
            std::size_t expected_dims = body_dims;
            if (header.declared_dims > 0) expected_dims = static_cast<std::size_t>(header.declared_dims);
            else if (header.univariate == 1) expected_dims = 1;
            if (body_dims != expected_dims) {
                throw TsFormatError(TsFormatError::Kind::DimensionCountMismatch, line_no,
                                    std::to_string(body_dims),
                                    "header declares " + std::to_string(expected_dims) +
                                        " dimension(s)");
            }
            std::size_t first_len = parse_segment(segs[0], line_no, nullptr, 0);
            if (header.declared_length > 0 &&
                first_len != static_cast<std::size_t>(header.declared_length)) {
                throw TsFormatError(TsFormatError::Kind::RaggedSeries, line_no,
                                    std::to_string(first_len),
                                    "header declares series length " +
                                        std::to_string(header.declared_length));
            }
            if (first_len == 0) {
                throw TsFormatError(TsFormatError::Kind::RaggedSeries, line_no, "",
                                    "empty series");
            }
            ds.dims = expected_dims;
            ds.length = first_len;
            shape_established = true;
        }

        if (body_dims != ds.dims) {
            throw TsFormatError(TsFormatError::Kind::DimensionCountMismatch, line_no,
                                std::to_string(body_dims),
                                "expected " + std::to_string(ds.dims) + " dimension(s)");
        }

        Case c(ds.dims, ds.length);
        for (std::size_t k = 0; k < ds.dims; ++k) {
            std::size_t n = parse_segment(segs[k], line_no, c.dim(k).data(), ds.length);
            if (n != ds.length) {
                throw TsFormatError(TsFormatError::Kind::RaggedSeries, line_no,
                                    std::to_string(n),
                                    "dimension " + std::to_string(k) + " has " +
                                        std::to_string(n) + " observations, expected " +
                                        std::to_string(ds.length));
            }
        }
        std::string label(trim(segs.back()));
        auto it = std::find(ds.class_labels.begin(), ds.class_labels.end(), label);
        if (it == ds.class_labels.end()) {
            throw TsFormatError(TsFormatError::Kind::UnknownClassLabel, line_no, label,
                                "label is not in the header's @classLabel list");
        }
        c.label = static_cast<int>(it - ds.class_labels.begin());
        ds.cases.push_back(std::move(c));
    }

    if (!in_data) malformed(line_no, "", "missing @data section");
    if (ds.cases.empty()) {
        throw TsFormatError(TsFormatError::Kind::MalformedHeader, line_no, "",
                            "no cases after @data");
    }
    ds.validate();
    return ds;
}

Dataset parse_ts_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string stem = path;
    if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (auto pos = stem.find_last_of('.'); pos != std::string::npos) stem = stem.substr(0, pos);
    return parse_ts(in, stem);
}

void write_ts(const Dataset& ds, std::ostream& out, int precision) {
    out << "@problemName " << (ds.name.empty() ? "unnamed" : ds.name) << "\n";
    out << "@timeStamps false\n";
    out << "@missing false\n";
    out << "@univariate " << (ds.dims == 1 ? "true" : "false") << "\n";
    out << "@dimensions " << ds.dims << "\n";
    out << "@equalLength true\n";
    out << "@seriesLength " << ds.length << "\n";
    out << "@classLabel true";
    for (const auto& l : ds.class_labels) out << ' ' << l;
    out << "\n@data\n";

    char buf[64];
    for (const Case& c : ds.cases) {
        for (std::size_t k = 0; k < ds.dims; ++k) {
            auto v = c.dim(k);
            for (std::size_t i = 0; i < v.size(); ++i) {
                int n = std::snprintf(buf, sizeof buf, "%.*g", precision, v[i]);
                out.write(buf, n);
                if (i + 1 < v.size()) out.put(',');
            }
            out.put(':');
        }
        out << ds.class_labels[c.label] << "\n";
    }
}

Dataset normalise_per_dimension(const Dataset& ds) {
    Dataset out = ds;
    for (Case& c : out.cases) {
        for (std::size_t k = 0; k < c.dims; ++k) {
            auto v = c.dim(k);
            const std::size_t m = v.size();
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(m);
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            double sigma = std::sqrt(ss / static_cast<double>(m));
            if (sigma < 1e-12 * std::max(1.0, std::fabs(mean))) {
                for (double& x : v) x = 0.0;  // constant dimension
            } else {
                for (double& x : v) x = (x - mean) / sigma;
            }
        }
    }
    return out;
}

std::pair<Dataset, Dataset> stratified_resample(const Dataset& train, const Dataset& test,
                                                std::uint64_t seed) {
    if (train.dims != test.dims || train.length != test.length ||
        train.class_labels != test.class_labels) {
        throw ShapeError("stratified_resample: train and test must share shape and labels");
    }
    if (seed == 0) return {train, test};  // seed-0 convention: the default split

    const std::size_t c = train.num_classes();
    auto train_counts = train.class_histogram();

    // Pool per class, train cases first then test, preserving input order.
    std::vector<std::vector<const Case*>> pool(c);
    for (const Case& cs : train.cases) pool[cs.label].push_back(&cs);
    for (const Case& cs : test.cases) pool[cs.label].push_back(&cs);

    std::mt19937_64 rng(seed);
    Dataset new_train = train;
    Dataset new_test = test;
    new_train.cases.clear();
    new_test.cases.clear();

    for (std::size_t k = 0; k < c; ++k) {
        auto& p = pool[k];
        if (p.size() < train_counts[k]) {
            throw ClassTooSmallError("class '" + train.class_labels[k] +
                                     "' has too few cases for stratification");
        }
        for (std::size_t i = p.size(); i > 1; --i) {
            std::swap(p[i - 1], p[rng_below(rng, i)]);
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            (i < train_counts[k] ? new_train : new_test).cases.push_back(*p[i]);
        }
    }
    return {new_train, new_test};
}

}  // namespace mtsc
