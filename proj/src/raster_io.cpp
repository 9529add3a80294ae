#include "hrf/raster_io.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "hrf/errors.hpp"

namespace hrf {

namespace {

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path + " for reading");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failure on " + path);
    return bytes;
}

// Header scanner that tracks byte offsets so format errors can point at the
// exact position.
struct Cursor {
    const std::vector<unsigned char>& bytes;
    const std::string& path;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        throw FormatError(path + ": " + what + " at byte " + std::to_string(at));
    }

    void skip_space_and_comments() {
        while (!eof()) {
            unsigned char c = bytes[pos];
            if (c == '#') {
                while (!eof() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::uint64_t read_number(const char* what) {
        skip_space_and_comments();
        std::size_t start = pos;
        if (eof() || bytes[pos] < '0' || bytes[pos] > '9')
            fail(std::string("expected ") + what, start);
        std::uint64_t v = 0;
        while (!eof() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 0xFFFFFFFFULL)
                fail(std::string(what) + " out of range", start);
            ++pos;
        }
        return v;
    }
};

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out)
        throw IoError("write failure on " + path);
}

} // namespace

Raster load_raster(const std::string& path, RasterKind kind) {
    std::vector<unsigned char> bytes = read_file(path);
    Cursor cur{bytes, path};

    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        cur.fail("not a PGM file (expected P2 or P5 magic)", 0);
    const bool binary = bytes[1] == '5';
    cur.pos = 2;

    std::uint64_t w = cur.read_number("width");
    std::uint64_t h = cur.read_number("height");
    cur.skip_space_and_comments();
    std::size_t maxval_at = cur.pos;
    std::uint64_t maxval = cur.read_number("maxval");

    if (w < 1 || h < 1)
        cur.fail("width and height must be >= 1", 2);
    if (w * h > (1ULL << 31))
        cur.fail("image too large", 2);
    if (maxval != 255 && maxval != 65535)
        cur.fail("unsupported maxval " + std::to_string(maxval) + " (need 255 or 65535)",
                 maxval_at);

    Raster out(static_cast<int>(w), static_cast<int>(h));
    const std::size_t n = out.size();

    if (binary) {
        // Exactly one whitespace byte separates the maxval from the payload.
        if (cur.eof() || !std::isspace(bytes[cur.pos]))
            cur.fail("expected single whitespace before P5 payload", cur.pos);
        ++cur.pos;
        const std::size_t bpp = maxval == 65535 ? 2 : 1;
        if (bytes.size() - cur.pos < n * bpp)
            cur.fail("truncated payload: need " + std::to_string(n * bpp) + " bytes, have " +
                         std::to_string(bytes.size() - cur.pos),
                     cur.pos);
        if (bpp == 1) {
            for (std::size_t i = 0; i < n; ++i)
                out.values[i] = bytes[cur.pos + i];
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                // 16-bit samples are most-significant byte first.
                unsigned hi = bytes[cur.pos + 2 * i];
                unsigned lo = bytes[cur.pos + 2 * i + 1];
                out.values[i] = static_cast<double>((hi << 8) | lo);
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            cur.skip_space_and_comments();
            std::size_t at = cur.pos;
            std::uint64_t v = cur.read_number("sample");
            if (v > maxval)
                cur.fail("sample " + std::to_string(v) + " exceeds maxval", at);
            out.values[i] = static_cast<double>(v);
        }
    }

    if (kind == RasterKind::Prior) {
        const double scale = static_cast<double>(maxval);
        for (double& v : out.values)
            v /= scale;
    }
    return out;
}

void save_pgm(const Raster& raster, const std::string& path, int maxval) {
    if (maxval != 255 && maxval != 65535)
        throw ValidationError("save_pgm: maxval must be 255 or 65535");
    std::string data;
    data.reserve(raster.size() * (maxval == 65535 ? 2 : 1) + 32);
    data += "P5\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n" +
            std::to_string(maxval) + "\n";
    for (double v : raster.values) {
        long long s = std::llround(v);
        if (s < 0 || s > maxval)
            throw ValidationError("save_pgm: sample " + std::to_string(v) + " outside [0, " +
                                  std::to_string(maxval) + "]");
        if (maxval == 65535) {
            data.push_back(static_cast<char>((s >> 8) & 0xFF));
            data.push_back(static_cast<char>(s & 0xFF));
        } else {
            data.push_back(static_cast<char>(s & 0xFF));
        }
    }
    write_file(path, data);
}

namespace {

// One label's pixels must form a single 4-connected component.
void check_4_connectivity(const std::vector<std::uint32_t>& labels, int width, int height) {
    const std::size_t n = labels.size();
    std::vector<char> visited(n, 0);
    std::unordered_map<std::uint32_t, std::uint32_t> components_per_label;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        const std::uint32_t lab = labels[start];
        auto [it, inserted] = components_per_label.try_emplace(lab, 1u);
        if (!inserted) {
            // Second component for this label: not 4-connected.
            throw ValidationError("label " + std::to_string(lab) +
                                  " is split into multiple 4-connected components");
        }
        stack.assign(1, start);
        visited[start] = 1;
        while (!stack.empty()) {
            std::size_t p = stack.back();
            stack.pop_back();
            int x = static_cast<int>(p % width);
            int y = static_cast<int>(p / width);
            const int dx[4] = {0, -1, 1, 0};
            const int dy[4] = {-1, 0, 0, 1};
            for (int d = 0; d < 4; ++d) {
                int nx = x + dx[d], ny = y + dy[d];
                if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
                std::size_t q = static_cast<std::size_t>(ny) * width + nx;
                if (!visited[q] && labels[q] == lab) {
                    visited[q] = 1;
                    stack.push_back(q);
                }
            }
        }
    }
}

} // namespace

LabelMap load_label_map(const std::string& path) {
    std::vector<unsigned char> bytes = read_file(path);
    Cursor cur{bytes, path};

    const char magic[4] = {'L', 'B', 'L', ' '};
    if (bytes.size() < 4 || std::memcmp(bytes.data(), magic, 4) != 0)
        cur.fail("not an LBL file (expected 'LBL ' magic)", 0);
    cur.pos = 4;
    std::uint64_t w = cur.read_number("width");
    if (cur.eof() || bytes[cur.pos] != ' ')
        cur.fail("expected single space after width", cur.pos);
    ++cur.pos;
    std::uint64_t h = cur.read_number("height");
    if (cur.eof() || bytes[cur.pos] != '\n')
        cur.fail("expected newline after height", cur.pos);
    ++cur.pos;

    if (w < 1 || h < 1)
        cur.fail("width and height must be >= 1", 4);
    if (w * h > (1ULL << 31))
        cur.fail("label map too large", 4);

    const std::size_t n = static_cast<std::size_t>(w * h);
    if (bytes.size() - cur.pos < n * 4)
        cur.fail("truncated payload: need " + std::to_string(n * 4) + " bytes, have " +
                     std::to_string(bytes.size() - cur.pos),
                 cur.pos);

    LabelMap out(static_cast<int>(w), static_cast<int>(h));
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned char* b = &bytes[cur.pos + 4 * i];
        out.labels[i] = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
                        (static_cast<std::uint32_t>(b[2]) << 16) |
                        (static_cast<std::uint32_t>(b[3]) << 24);
    }

    check_4_connectivity(out.labels, out.width, out.height);
    out.region_count = densify_labels(out.labels);
    return out;
}

void save_label_map(const LabelMap& labels, const std::string& path) {
    std::string data;
    data.reserve(labels.size() * 4 + 32);
    data += "LBL " + std::to_string(labels.width) + " " + std::to_string(labels.height) + "\n";
    for (std::uint32_t l : labels.labels) {
        data.push_back(static_cast<char>(l & 0xFF));
        data.push_back(static_cast<char>((l >> 8) & 0xFF));
        data.push_back(static_cast<char>((l >> 16) & 0xFF));
        data.push_back(static_cast<char>((l >> 24) & 0xFF));
    }
    write_file(path, data);
}

void save_ucm(const SaliencyGrid& ucm, const std::string& path) {
    std::string data;
    data.reserve(ucm.values.size() * 2 + 32);
    data += "P5\n" + std::to_string(ucm.width) + " " + std::to_string(ucm.height) + "\n65535\n";
    for (double v : ucm.values) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("save_ucm: saliency " + std::to_string(v) + " outside [0,1]");
        // Round half up, per the documented quantization.
        unsigned s = static_cast<unsigned>(std::floor(v * 65535.0 + 0.5));
        data.push_back(static_cast<char>((s >> 8) & 0xFF));
        data.push_back(static_cast<char>(s & 0xFF));
    }
    write_file(path, data);
}

} // namespace hrf
