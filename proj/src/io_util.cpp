#include "wgtk/io_util.hpp"

#include "wgtk/common.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>

namespace wgtk {

struct LineReader::Impl {
    std::ifstream plain;
    gzFile gz = nullptr;
    bool is_gz = false;
    std::vector<char> buf;
    std::size_t pos = 0, fill = 0;
    bool eof = false;

    ~Impl() {
        if (gz) gzclose(gz);
    }

    bool refill() {
        if (eof) return false;
        if (is_gz) {
            int n = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()));
            if (n < 0) throw RuntimeError("gzread failed");
            fill = static_cast<std::size_t>(n);
        } else {
            plain.read(buf.data(), static_cast<std::streamsize>(buf.size()));
            fill = static_cast<std::size_t>(plain.gcount());
        }
        pos = 0;
        if (fill == 0) eof = true;
        return fill > 0;
    }
};

LineReader::LineReader(const std::string& path) : impl_(new Impl), path_(path) {
    impl_->buf.resize(1 << 20);
    impl_->is_gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    if (impl_->is_gz) {
        impl_->gz = gzopen(path.c_str(), "rb");
        if (!impl_->gz) throw ValidationError("cannot open file: " + path);
    } else {
        impl_->plain.open(path, std::ios::binary);
        if (!impl_->plain) throw ValidationError("cannot open file: " + path);
    }
}

LineReader::~LineReader() = default;
LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::next(std::string& line) {
    line.clear();
    bool got_any = false;
    for (;;) {
        if (impl_->pos == impl_->fill && !impl_->refill()) break;
        const char* start = impl_->buf.data() + impl_->pos;
        const char* nl = static_cast<const char*>(
            std::memchr(start, '\n', impl_->fill - impl_->pos));
        if (nl) {
            line.append(start, static_cast<std::size_t>(nl - start));
            impl_->pos += static_cast<std::size_t>(nl - start) + 1;
            got_any = true;
            break;
        }
        line.append(start, impl_->fill - impl_->pos);
        impl_->pos = impl_->fill;
        got_any = got_any || !line.empty();
    }
    if (!got_any && line.empty()) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_number_;
    return true;
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        } else {
            out += f;
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return s.substr(b, e - b);
}

std::string format_double(double v) {
    std::array<char, 40> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw RuntimeError("double formatting failed");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s, const std::string& context) {
    s = trim(s);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError(context + ": not a number: '" + std::string(s) + "'");
    return v;
}

std::int64_t parse_int(std::string_view s, const std::string& context) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError(context + ": not an integer: '" + std::string(s) + "'");
    return v;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

bool ends_with_icase(std::string_view s, std::string_view suffix) {
    if (s.size() < suffix.size()) return false;
    std::string_view tail = s.substr(s.size() - suffix.size());
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        char a = tail[i], b = suffix[i];
        if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
        if (b >= 'A' && b <= 'Z') b = static_cast<char>(b - 'A' + 'a');
        if (a != b) return false;
    }
    return true;
}

std::string reverse_host(std::string_view host) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= host.size(); ++i) {
        if (i == host.size() || host[i] == '.') {
            parts.push_back(host.substr(start, i - start));
            start = i + 1;
        }
    }
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (!out.empty()) out += '.';
        out.append(it->data(), it->size());
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw RuntimeError("EVP_MD_CTX_new failed");
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        std::streamsize n = in.gcount();
        if (n > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(n));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    LineReader reader(path);
    std::string out, line;
    while (reader.next(line)) {
        out += line;
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw RuntimeError("write failed: " + path);
}

} // namespace wgtk
