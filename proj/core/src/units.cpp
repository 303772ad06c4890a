#include "opbeam/units.hpp"

#include <cmath>
#include <stdexcept>

namespace opbeam::units {

namespace {

enum class Dimension {
    length,
    time,
    angle,
    power,
    energy,
    mass,
    frequency,
    data_rate,
    electric_potential,
    electric_charge,
    none,
};

Dimension dimension_of(Unit u) {
    switch (u) {
        case Unit::meter:
        case Unit::kilometer:
        case Unit::nanometer:
            return Dimension::length;
        case Unit::second:
            return Dimension::time;
        case Unit::radian:
        case Unit::microradian:
            return Dimension::angle;
        case Unit::watt:
            return Dimension::power;
        case Unit::watt_hour:
            return Dimension::energy;
        case Unit::kilogram:
            return Dimension::mass;
        case Unit::hertz:
        case Unit::gigahertz:
            return Dimension::frequency;
        case Unit::bits_per_second:
            return Dimension::data_rate;
        case Unit::volt:
            return Dimension::electric_potential;
        case Unit::ampere_hour:
            return Dimension::electric_charge;
        case Unit::dimensionless:
            return Dimension::none;
    }
    throw std::logic_error("unhandled unit");
}

// Scale to the group's base unit (m, rad, Hz); 1.0 for everything else.
double scale_of(Unit u) {
    switch (u) {
        case Unit::kilometer:
            return 1e3;
        case Unit::nanometer:
            return 1e-9;
        case Unit::microradian:
            return 1e-6;
        case Unit::gigahertz:
            return 1e9;
        default:
            return 1.0;
    }
}

}  // namespace

const char* unit_symbol(Unit u) {
    switch (u) {
        case Unit::meter: return "m";
        case Unit::kilometer: return "km";
        case Unit::nanometer: return "nm";
        case Unit::second: return "s";
        case Unit::radian: return "rad";
        case Unit::microradian: return "urad";
        case Unit::watt: return "W";
        case Unit::watt_hour: return "Wh";
        case Unit::kilogram: return "kg";
        case Unit::hertz: return "Hz";
        case Unit::gigahertz: return "GHz";
        case Unit::bits_per_second: return "bps";
        case Unit::volt: return "V";
        case Unit::ampere_hour: return "Ah";
        case Unit::dimensionless: return "-";
    }
    throw std::logic_error("unhandled unit");
}

Quantity::Quantity(double value, Unit unit) : value_(value), unit_(unit) {
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string("non-finite quantity in ") + unit_symbol(unit));
    }
}

Quantity Quantity::converted_to(Unit target) const {
    if (target == unit_) {
        return *this;
    }
    if (dimension_of(target) != dimension_of(unit_)) {
        throw std::domain_error(std::string("cannot convert ") + unit_symbol(unit_) +
                                " to " + unit_symbol(target));
    }
    // multiply into the base unit, then divide out the target scale; using a
    // pre-rounded ratio instead would make to-SI-and-back round trips drift
    // by an ulp and destabilize canonical scenario text
    return Quantity((value_ * scale_of(unit_)) / scale_of(target), target);
}

const char* db_reference_symbol(DbReference r) {
    switch (r) {
        case DbReference::ratio: return "dB";
        case DbReference::dbi: return "dBi";
        case DbReference::dbm: return "dBm";
        case DbReference::dbw: return "dBW";
        case DbReference::dbhz: return "dBHz";
    }
    throw std::logic_error("unhandled dB reference");
}

bool is_absolute(DbReference r) {
    return r == DbReference::dbm || r == DbReference::dbw || r == DbReference::dbhz;
}

Decibel::Decibel(double db, DbReference reference) : db_(db), reference_(reference) {
    if (!std::isfinite(db)) {
        throw std::domain_error(std::string("non-finite decibel value in ") +
                                db_reference_symbol(reference));
    }
}

Decibel Decibel::converted_to(DbReference target) const {
    if (target == reference_) {
        return *this;
    }
    if (reference_ == DbReference::dbm && target == DbReference::dbw) {
        return Decibel(db_ - 30.0, target);
    }
    if (reference_ == DbReference::dbw && target == DbReference::dbm) {
        return Decibel(db_ + 30.0, target);
    }
    throw std::domain_error(std::string("cannot convert ") + db_reference_symbol(reference_) +
                            " to " + db_reference_symbol(target));
}

Decibel operator+(const Decibel& a, const Decibel& b) {
    const bool abs_a = is_absolute(a.reference());
    const bool abs_b = is_absolute(b.reference());
    if (abs_a && abs_b) {
        throw std::domain_error(std::string("cannot add ") + db_reference_symbol(a.reference()) +
                                " and " + db_reference_symbol(b.reference()) +
                                ": both are absolute");
    }
    if (abs_a) {
        return Decibel(a.db() + b.db(), a.reference());
    }
    if (abs_b) {
        return Decibel(a.db() + b.db(), b.reference());
    }
    return Decibel(a.db() + b.db(), DbReference::ratio);
}

Decibel operator-(const Decibel& a, const Decibel& b) {
    const bool abs_a = is_absolute(a.reference());
    const bool abs_b = is_absolute(b.reference());
    if (abs_a && abs_b) {
        if (a.reference() != b.reference()) {
            throw std::domain_error(std::string("cannot subtract ") +
                                    db_reference_symbol(b.reference()) + " from " +
                                    db_reference_symbol(a.reference()) +
                                    ": references differ, convert first");
        }
        return Decibel(a.db() - b.db(), DbReference::ratio);
    }
    if (abs_a) {
        return Decibel(a.db() - b.db(), a.reference());
    }
    if (abs_b) {
        throw std::domain_error(std::string("cannot subtract absolute ") +
                                db_reference_symbol(b.reference()) + " from a ratio");
    }
    return Decibel(a.db() - b.db(), DbReference::ratio);
}

Decibel db_from_ratio(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::domain_error("db_from_ratio requires a positive finite ratio");
    }
    return Decibel(10.0 * std::log10(r), DbReference::ratio);
}

double ratio_from_db(const Decibel& d) {
    switch (d.reference()) {
        case DbReference::dbm:
            return std::pow(10.0, (d.db() - 30.0) / 10.0);
        case DbReference::ratio:
        case DbReference::dbi:
        case DbReference::dbw:
        case DbReference::dbhz:
            return std::pow(10.0, d.db() / 10.0);
    }
    throw std::logic_error("unhandled dB reference");
}

double dbm_from_watts(double watts) {
    if (!(watts > 0.0) || !std::isfinite(watts)) {
        throw std::domain_error("dbm_from_watts requires a positive finite power");
    }
    return 10.0 * std::log10(watts) + 30.0;
}

double watts_from_dbm(double dbm) {
    if (!std::isfinite(dbm)) {
        throw std::domain_error("watts_from_dbm requires a finite value");
    }
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace opbeam::units
