#include "satotate/io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "satotate/errors.hpp"

namespace satotate {

namespace {

constexpr char kMagic[4] = {'A', 'S', 'T', 'C'};
constexpr std::size_t kHeaderSize = 4 + 4 + 1 + 8 + 8;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& out, double v) {
    if (!std::isfinite(v)) throw InputError("cannot serialize a non-finite value");
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

class Reader {
  public:
    explicit Reader(const std::string& data, std::size_t pos = 0) : data_(data), pos_(pos) {}
    std::uint64_t uint(int bytes) {
        need(bytes);
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += bytes;
        return v;
    }
    double f64() {
        const std::uint64_t bits = uint(8);
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == data_.size(); }

  private:
    void need(std::size_t n) const {
        if (pos_ + n > data_.size()) throw FormatError("cache payload shorter than declared");
    }
    const std::string& data_;
    std::size_t pos_;
};

void write_file(const std::filesystem::path& path, CacheKind kind, std::uint64_t limit,
                const std::string& payload) {
    std::string out(kMagic, 4);
    put_u32(out, kCacheVersion);
    out.push_back(static_cast<char>(kind));
    put_u64(out, limit);
    put_u64(out, fnv1a64(payload));
    out += payload;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Loaded {
    CacheHeader header;
    std::string payload;
};

Loaded load_checked(const std::filesystem::path& path, std::optional<CacheKind> expect) {
    std::string data = read_file(path);
    if (data.size() >= 4 && std::memcmp(data.data(), kMagic, 4) != 0) {
        throw FormatError(path.string() + ": bad magic");
    }
    if (data.size() < kHeaderSize) throw ChecksumError(path.string() + ": truncated header");
    Reader r(data, 4);
    CacheHeader h{};
    h.version = static_cast<std::uint32_t>(r.uint(4));
    const auto kind = static_cast<std::uint8_t>(r.uint(1));
    h.limit = r.uint(8);
    h.checksum = r.uint(8);
    if (h.version != kCacheVersion) throw FormatError(path.string() + ": unsupported version");
    if (kind < 1 || kind > 4) throw FormatError(path.string() + ": unknown kind");
    h.kind = static_cast<CacheKind>(kind);
    if (expect && *expect != h.kind) throw FormatError(path.string() + ": unexpected cache kind");
    std::string payload = data.substr(kHeaderSize);
    if (fnv1a64(payload) != h.checksum) throw ChecksumError(path.string() + ": checksum mismatch");
    return {h, std::move(payload)};
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string encode_twos_complement(const mpz_class& v) {
    const bool negative = sgn(v) < 0;
    // Negative v is stored as the bitwise complement of |v| - 1.
    mpz_class m = negative ? mpz_class(-v - 1) : v;
    std::string bytes;
    if (m != 0) {
        std::size_t count = 0;
        bytes.resize((mpz_sizeinbase(m.get_mpz_t(), 2) + 7) / 8);
        mpz_export(bytes.data(), &count, -1, 1, 0, 0, m.get_mpz_t());
        bytes.resize(count);
    }
    if (bytes.empty() || (static_cast<unsigned char>(bytes.back()) & 0x80)) bytes.push_back('\0');
    if (negative) {
        for (auto& c : bytes) c = static_cast<char>(~static_cast<unsigned char>(c));
    }
    return bytes;
}

mpz_class decode_twos_complement(const std::string& bytes) {
    if (bytes.empty()) throw FormatError("empty integer encoding");
    const bool negative = static_cast<unsigned char>(bytes.back()) & 0x80;
    std::string mag = bytes;
    if (negative) {
        for (auto& c : mag) c = static_cast<char>(~static_cast<unsigned char>(c));
    }
    mpz_class m;
    mpz_import(m.get_mpz_t(), mag.size(), -1, 1, 0, 0, mag.data());
    return negative ? mpz_class(-m - 1) : m;
}

void save_cache(const std::filesystem::path& path, const ExactTauTable& table) {
    std::string payload;
    for (std::uint64_t n = 1; n <= table.limit; ++n) {
        const std::string b = encode_twos_complement(table.taus[n]);
        put_u32(payload, static_cast<std::uint32_t>(b.size()));
        payload += b;
    }
    write_file(path, CacheKind::ExactTau, table.limit, payload);
}

void save_cache(const std::filesystem::path& path, const NormalizedSequence& seq) {
    std::string payload;
    payload.reserve(1 + 8 * seq.limit);
    payload.push_back(static_cast<char>(seq.source));
    for (std::uint64_t n = 1; n <= seq.limit; ++n) put_f64(payload, seq.values[n]);
    write_file(path, CacheKind::Normalized, seq.limit, payload);
}

void save_cache(const std::filesystem::path& path, const AngleSeries& angles) {
    std::string payload;
    put_u64(payload, angles.records.size());
    for (const auto& r : angles.records) {
        put_u64(payload, r.p);
        put_f64(payload, r.a_p);
        put_f64(payload, r.theta);
    }
    write_file(path, CacheKind::Angles, angles.limit, payload);
}

void save_cache(const std::filesystem::path& path, const TraceSeries& series) {
    std::string payload;
    payload.push_back(series.curve ? 1 : 0);
    put_u64(payload, static_cast<std::uint64_t>(series.curve ? series.curve->a4() : 0));
    put_u64(payload, static_cast<std::uint64_t>(series.curve ? series.curve->a6() : 0));
    put_u64(payload, series.records.size());
    for (const auto& r : series.records) {
        put_u64(payload, r.p);
        put_u64(payload, static_cast<std::uint64_t>(r.t));
        payload.push_back(r.good ? 1 : 0);
    }
    write_file(path, CacheKind::Traces, series.limit, payload);
}

CacheHeader read_cache_header(const std::filesystem::path& path) {
    return load_checked(path, std::nullopt).header;
}

ExactTauTable load_exact_tau(const std::filesystem::path& path) {
    const Loaded l = load_checked(path, CacheKind::ExactTau);
    Reader r(l.payload);
    ExactTauTable t;
    t.limit = l.header.limit;
    t.taus.assign(t.limit + 1, mpz_class(0));
    for (std::uint64_t n = 1; n <= t.limit; ++n) {
        const auto len = static_cast<std::size_t>(r.uint(4));
        t.taus[n] = decode_twos_complement(r.bytes(len));
    }
    if (!r.done()) throw FormatError("trailing bytes in exact-tau cache");
    return t;
}

NormalizedSequence load_normalized(const std::filesystem::path& path) {
    const Loaded l = load_checked(path, CacheKind::Normalized);
    Reader r(l.payload);
    NormalizedSequence s;
    s.limit = l.header.limit;
    const auto tag = r.uint(1);
    if (tag > 2) throw FormatError("unknown sequence source tag");
    s.source = static_cast<SequenceSource>(tag);
    s.values.assign(s.limit + 1, 0.0);
    for (std::uint64_t n = 1; n <= s.limit; ++n) s.values[n] = r.f64();
    if (!r.done()) throw FormatError("trailing bytes in normalized cache");
    return s;
}

AngleSeries load_angles(const std::filesystem::path& path) {
    const Loaded l = load_checked(path, CacheKind::Angles);
    Reader r(l.payload);
    AngleSeries a;
    a.limit = l.header.limit;
    const std::uint64_t count = r.uint(8);
    a.records.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        AngleRecord rec{};
        rec.p = r.uint(8);
        rec.a_p = r.f64();
        rec.theta = r.f64();
        a.records.push_back(rec);
    }
    if (!r.done()) throw FormatError("trailing bytes in angle cache");
    return a;
}

TraceSeries load_traces(const std::filesystem::path& path) {
    const Loaded l = load_checked(path, CacheKind::Traces);
    Reader r(l.payload);
    TraceSeries s;
    s.limit = l.header.limit;
    const bool has_curve = r.uint(1) != 0;
    const auto a4 = static_cast<std::int64_t>(r.uint(8));
    const auto a6 = static_cast<std::int64_t>(r.uint(8));
    if (has_curve) s.curve = CurveSpec(a4, a6);
    const std::uint64_t count = r.uint(8);
    for (std::uint64_t i = 0; i < count; ++i) {
        TraceRecord rec{};
        rec.p = r.uint(8);
        rec.t = static_cast<std::int64_t>(r.uint(8));
        rec.good = r.uint(1) != 0;
        s.records.push_back(rec);
    }
    if (!r.done()) throw FormatError("trailing bytes in trace cache");
    return s;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }
double number(const ojson& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

}  // namespace

std::string report_to_json(const VerificationReport& report, bool include_runtime, int indent) {
    ojson j;
    j["name"] = report.name;
    ojson params = ojson::object();
    for (const auto& [k, v] : report.parameters) params[k] = v;
    j["parameters"] = params;
    j["tables"] = ojson::array();
    for (const auto& t : report.tables) {
        ojson jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = ojson::array();
        for (const auto& row : t.rows) {
            ojson jr = ojson::array();
            for (double v : row) jr.push_back(number(v));
            jt["rows"].push_back(jr);
        }
        j["tables"].push_back(jt);
    }
    j["flags"] = ojson::array();
    for (const auto& f : report.flags) {
        j["flags"].push_back({{"name", f.name},
                              {"value", number(f.value)},
                              {"comparator", f.comparator == Comparator::LessEqual ? "<=" : ">="},
                              {"threshold", number(f.threshold)},
                              {"pass", f.pass}});
    }
    j["passed"] = report.passed();
    if (include_runtime) j["runtime_seconds"] = report.runtime_seconds;
    return j.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("report JSON: ") + e.what());
    }
    VerificationReport r;
    r.name = j.at("name").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
    for (const auto& jt : j.at("tables")) {
        ReportTable t;
        t.name = jt.at("name").get<std::string>();
        t.columns = jt.at("columns").get<std::vector<std::string>>();
        for (const auto& jr : jt.at("rows")) {
            std::vector<double> row;
            for (const auto& v : jr) row.push_back(number(v));
            t.rows.push_back(std::move(row));
        }
        r.tables.push_back(std::move(t));
    }
    for (const auto& jf : j.at("flags")) {
        ReportFlag f;
        f.name = jf.at("name").get<std::string>();
        f.value = number(jf.at("value"));
        f.comparator = jf.at("comparator").get<std::string>() == "<=" ? Comparator::LessEqual
                                                                       : Comparator::GreaterEqual;
        f.threshold = number(jf.at("threshold"));
        f.pass = jf.at("pass").get<bool>();
        r.flags.push_back(std::move(f));
    }
    if (j.contains("runtime_seconds")) r.runtime_seconds = j["runtime_seconds"].get<double>();
    return r;
}

std::string report_to_csv(const VerificationReport& report) {
    std::string out = "table,row,column,value\n";
    char buf[64];
    for (const auto& t : report.tables) {
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            for (std::size_t c = 0; c < t.columns.size(); ++c) {
                const double v = t.rows[i][c];
                std::string cell;
                if (std::isnan(v)) {
                    cell = "nan";
                } else {
                    const auto res = std::to_chars(buf, buf + sizeof buf, v);
                    cell.assign(buf, res.ptr);
                }
                out += t.name + ',' + std::to_string(i) + ',' + t.columns[c] + ',' + cell + '\n';
            }
        }
    }
    auto num = [&](double v) {
        if (std::isnan(v)) return std::string("nan");
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    // Flags as table "flags", one row per flag name.
    for (const auto& f : report.flags) {
        out += "flags," + f.name + ",value," + num(f.value) + '\n';
        out += "flags," + f.name + ",threshold," + num(f.threshold) + '\n';
        out += "flags," + f.name + ",pass," + (f.pass ? "1" : "0") + '\n';
    }
    return out;
}

}  // namespace satotate
