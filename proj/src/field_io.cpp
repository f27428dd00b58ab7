#include "okas/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace okas {

void write_field(std::ostream& out, const ScalarField& field)
{
    const TorusGrid& g = field.grid();
    out << "OKAS-FIELD v1 d=" << g.dim() << " n=" << g.n() << '\n';
    out << std::setprecision(17);
    const std::size_t row = static_cast<std::size_t>(g.n());
    for (std::size_t i = 0; i < field.size(); ++i) {
        out << field[i] << ((i + 1) % row == 0 ? '\n' : ' ');
    }
}

ScalarField read_field(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("read_field: empty input");
    std::istringstream hs(header);
    std::string magic, version, dtok, ntok;
    hs >> magic >> version >> dtok >> ntok;
    if (magic != "OKAS-FIELD" || version != "v1" || dtok.rfind("d=", 0) != 0 || ntok.rfind("n=", 0) != 0) {
        throw std::runtime_error("read_field: bad header '" + header + "'");
    }
    const TorusGrid grid(std::stoi(dtok.substr(2)), std::stoi(ntok.substr(2)));
    ScalarField field(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(in >> field[i])) {
            throw std::runtime_error("read_field: expected " + std::to_string(grid.size()) + " values, got " +
                                     std::to_string(i));
        }
    }
    return field;
}

void write_field(const std::filesystem::path& path, const ScalarField& field)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field: cannot open " + path.string());
    write_field(out, field);
}

ScalarField read_field(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field: cannot open " + path.string());
    return read_field(in);
}

}  // namespace okas
