#include "sumnet/code_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sumnet {

namespace {

void write_rows(std::ostream& out, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << '\n';
    }
}

class LineReader {
 public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next() {
        std::string line;
        if (!std::getline(in_, line)) fail("unexpected end of input");
        ++number_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("code file line " + std::to_string(number_) + ": " + what);
    }

    // Reads "key value" where value is a nonnegative integer.
    std::size_t field(std::istringstream& ls, const std::string& key) const {
        std::string k;
        long long v = -1;
        if (!(ls >> k) || k != key || !(ls >> v) || v < 0) fail("expected '" + key + " <n>'");
        return static_cast<std::size_t>(v);
    }

    IntMatrix numbers(std::size_t rows, std::size_t cols) {
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            std::istringstream ls(next());
            for (std::size_t j = 0; j < cols; ++j)
                if (!(ls >> m(i, j))) fail("expected " + std::to_string(cols) + " integers");
            std::string rest;
            if (ls >> rest) fail("trailing data on matrix row");
        }
        return m;
    }

 private:
    std::istream& in_;
    std::size_t number_ = 0;
};

}  // namespace

void write_code(std::ostream& out, const NetworkCode& code) {
    out << "sumnet-code 1\n";
    out << "m " << code.m << " n " << code.n << " p " << code.p << " alpha " << code.alpha << " r " << code.r() << " c "
        << code.c() << " construction " << code.construction << '\n';
    out << "matrix\n";
    for (std::size_t i = 0; i < code.r(); ++i) {
        for (std::size_t j = 0; j < code.c(); ++j) out << code.matrix(i, j);
        out << '\n';
    }
    for (std::size_t i = 0; i < code.encoders.size(); ++i) {
        out << "encoder " << i + 1 << '\n';
        write_rows(out, code.encoders[i]);
    }
    for (std::size_t t = 0; t < code.decoders.size(); ++t) {
        out << "decoder " << t + 1 << " inputs";
        for (std::size_t e : code.decoders[t].inputs) out << ' ' << e;
        out << '\n';
        write_rows(out, code.decoders[t].matrix);
    }
    out << "end\n";
}

std::string write_code(const NetworkCode& code) {
    std::ostringstream os;
    write_code(os, code);
    return os.str();
}

NetworkCode read_code(std::istream& in) {
    LineReader lines(in);
    if (lines.next() != "sumnet-code 1") lines.fail("expected 'sumnet-code 1'");
    NetworkCode code;
    std::size_t r = 0, c = 0;
    {
        std::istringstream ls(lines.next());
        code.m = lines.field(ls, "m");
        code.n = lines.field(ls, "n");
        code.p = lines.field(ls, "p");
        code.alpha = lines.field(ls, "alpha");
        r = lines.field(ls, "r");
        c = lines.field(ls, "c");
        std::string key;
        if (!(ls >> key) || key != "construction" || !(ls >> code.construction)) lines.fail("expected 'construction <name>'");
        std::string rest;
        if (ls >> rest) lines.fail("trailing data on header");
        if (code.alpha == 0 || code.m == 0 || code.n == 0 || r == 0 || c == 0) lines.fail("sizes must be positive");
    }
    if (lines.next() != "matrix") lines.fail("expected 'matrix'");
    code.matrix = IntMatrix(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const std::string row = lines.next();
        if (row.size() != c || row.find_first_not_of("01") != std::string::npos)
            lines.fail("matrix rows must be " + std::to_string(c) + " characters over {0,1}");
        for (std::size_t j = 0; j < c; ++j) code.matrix(i, j) = row[j] - '0';
    }
    const std::size_t width = code.alpha * code.n;
    for (std::size_t i = 0; i < r; ++i) {
        std::istringstream ls(lines.next());
        std::string key;
        long long idx = 0;
        if (!(ls >> key >> idx) || key != "encoder" || idx != static_cast<long long>(i + 1))
            lines.fail("expected 'encoder " + std::to_string(i + 1) + "'");
        code.encoders.push_back(lines.numbers(width, code.m * (r + c)));
    }
    for (std::size_t t = 0; t < r + c; ++t) {
        std::istringstream ls(lines.next());
        std::string key, inputs_key;
        long long idx = 0;
        if (!(ls >> key >> idx >> inputs_key) || key != "decoder" || idx != static_cast<long long>(t + 1) ||
            inputs_key != "inputs")
            lines.fail("expected 'decoder " + std::to_string(t + 1) + " inputs ...'");
        Decoder dec;
        long long e;
        while (ls >> e) {
            if (e < 0) lines.fail("edge ids are nonnegative");
            dec.inputs.push_back(static_cast<std::size_t>(e));
        }
        if (!ls.eof()) lines.fail("edge ids must be integers");
        dec.matrix = lines.numbers(code.m, width * dec.inputs.size());
        code.decoders.push_back(std::move(dec));
    }
    if (lines.next() != "end") lines.fail("expected 'end'");
    return code;
}

NetworkCode read_code(const std::string& text) {
    std::istringstream in(text);
    return read_code(in);
}

}  // namespace sumnet
