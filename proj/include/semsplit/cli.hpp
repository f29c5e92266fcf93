#pragma once

// Command dispatch for the semsplit tool. Argument parsing lives in
// tools/; this header only needs a filled-in CliConfig and streams, so the
// commands can be driven directly from tests.
//
// Exit status: 0 success, 1 domain error (bad input, scope mismatch, failed
// oracle cross-check, ...), 2 resource bound exceeded.

#include "semsplit/core.hpp"
#include "semsplit/factorize.hpp"
#include "semsplit/io.hpp"
#include "semsplit/logic.hpp"
#include "semsplit/partition.hpp"
#include "semsplit/recoding.hpp"
#include "semsplit/revision.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace semsplit::cli
{

enum class Command
{
    models,
    check,
    finest,
    split,
    revise,
    recode_search,
    recode_apply,
};

inline std::string_view command_name( Command c )
{
    switch ( c )
    {
    case Command::models: return "models";
    case Command::check: return "check";
    case Command::finest: return "finest";
    case Command::split: return "split";
    case Command::revise: return "revise";
    case Command::recode_search: return "recode-search";
    case Command::recode_apply: return "recode-apply";
    }
    return "?";
}

enum class OutputMode
{
    plain,
    structured,
};

struct CliConfig
{
    Command command = Command::finest;
    std::optional< std::string > models_path;     // -m
    std::optional< std::string > theory_path;     // -t
    std::optional< std::string > recoding_path;   // -r
    std::optional< std::string > psi_models_path; // --psi-models
    std::optional< std::string > partition_text;  // -p
    std::optional< std::string > formula_text;    // -f
    OutputMode output = OutputMode::plain;
    bool oracle = false;
    std::size_t max_variables = default_max_variables;
    Code max_product = default_max_product;
    std::size_t oracle_bound = default_oracle_bound;
};

namespace detail
{

using json = nlohmann::ordered_json;

// An error tagged with the input it came from.
class InputError : public Error
{
public:
    InputError( ErrorKind kind, const std::string& message ) : Error{ kind, message } {}
};

class Session
{
    const CliConfig& _config;
    std::istream& _in;
    bool _stdin_used = false;
    std::uint64_t _digest = 14695981039346656037ULL;

public:
    std::string plain;
    json result = json::object();

    Session( const CliConfig& config, std::istream& in ) : _config{ config }, _in{ in } {}

    [[nodiscard]] std::string digest() const
    {
        std::ostringstream s;
        s << "fnv1a64:" << std::hex << std::setw( 16 ) << std::setfill( '0' ) << _digest;
        return s.str();
    }

    void absorb( std::string_view label, std::string_view bytes )
    {
        for ( char c : label )
            mix( static_cast< unsigned char >( c ) );
        mix( 0 );
        for ( char c : bytes )
            mix( static_cast< unsigned char >( c ) );
        mix( 0 );
    }

    std::string read( const std::string& path )
    {
        std::string text;
        if ( path == "-" )
        {
            if ( _stdin_used )
                throw Error{ ErrorKind::argument, "standard input can feed only one input" };
            _stdin_used = true;
            text.assign( std::istreambuf_iterator< char >{ _in }, {} );
        }
        else
        {
            std::ifstream file{ path, std::ios::binary };
            if ( !file )
                throw Error{ ErrorKind::argument, path + ": cannot open file" };
            text.assign( std::istreambuf_iterator< char >{ file }, {} );
        }
        absorb( path, text );
        return text;
    }

    template < typename Parse >
    auto parse_input( const std::string& label, const std::string& text, Parse&& parse )
    {
        try
        {
            return parse( text );
        }
        catch ( const ParseError& e )
        {
            std::string where = label;
            if ( e.line() > 0 )
                where += ":" + std::to_string( e.line() ) + ":" + std::to_string( e.offset() + 1 );
            else
                where += ": offset " + std::to_string( e.offset() );
            throw InputError{ ErrorKind::parse, where + ": " + e.detail() };
        }
        catch ( const Error& e )
        {
            throw InputError{ e.kind(), label + ": " + strip_kind( e ) };
        }
    }

    ModelSet model_set( const std::string& path )
    {
        auto text = read( path );
        return parse_input( path, text, []( const std::string& t ) { return parse_model_set( t ); } );
    }

    Theory theory()
    {
        auto path = require( _config.theory_path, "-t/--theory" );
        auto text = read( path );
        return parse_input( path, text, []( const std::string& t ) { return parse_theory( t ); } );
    }

    ModelSet models()
    {
        return model_set( require( _config.models_path, "-m/--models" ) );
    }

    static std::string strip_kind( const Error& e )
    {
        std::string what = e.what();
        auto prefix = std::string{ to_string( e.kind() ) } + ": ";
        return what.rfind( prefix, 0 ) == 0 ? what.substr( prefix.size() ) : what;
    }

    static const std::string& require( const std::optional< std::string >& value, std::string_view flag )
    {
        if ( !value )
            throw Error{ ErrorKind::argument, "missing required option " + std::string{ flag } };
        return *value;
    }

    void line( std::string_view key, std::string_view value )
    {
        plain += std::string{ key } + ": " + std::string{ value } + "\n";
    }

private:
    void mix( unsigned char byte )
    {
        _digest ^= byte;
        _digest *= 1099511628211ULL;
    }
};

inline json rows_json( const ModelSet& x )
{
    json rows = json::array();
    for ( const auto& m : x.members() )
    {
        json row = json::array();
        for ( auto k : x.scope() )
            row.push_back( m.symbol( k ) );
        rows.push_back( std::move( row ) );
    }
    return rows;
}

inline json model_set_json( const ModelSet& x )
{
    return json{ { "coordinates", x.space()->names( x.scope() ) }, { "rows", rows_json( x ) } };
}

inline std::string joined_names( const ModelSet& x )
{
    std::string out;
    for ( const auto& n : x.space()->names( x.scope() ) )
        out += ( out.empty() ? "" : " " ) + n;
    return out;
}

// Runs the oracle and records agreement; a disagreement is a domain error.
inline void cross_check( Session& s, const ModelSet& x, const Partition& finest, std::size_t bound )
{
    auto expected = oracle_finest( x, bound );
    if ( expected != finest )
        throw Error{ ErrorKind::argument, "oracle disagreement: bipartition search gave " +
                                              format_partition( *x.space(), finest ) + ", oracle gave " +
                                              format_partition( *x.space(), expected ) };
    s.line( "oracle", "agree" );
    s.result[ "oracle" ] = "agree";
}

inline void run_models( Session& s, const CliConfig& c )
{
    auto t = s.theory();
    auto x = models_of( t, c.max_variables );
    s.plain = format_model_set( x );
    s.result = model_set_json( x );
}

inline void run_check( Session& s, const CliConfig& c )
{
    auto x = s.models();
    const auto& text = Session::require( c.partition_text, "-p/--partition" );
    s.absorb( "--partition", text );
    auto p = s.parse_input( "--partition", text, [ & ]( const std::string& t ) { return parse_partition( *x.space(), t ); } );
    auto report = is_factorization( x, p );

    s.line( "partition", format_partition( *x.space(), report.partition ) );
    s.line( "holds", report.holds ? "true" : "false" );
    s.result[ "partition" ] = format_partition( *x.space(), report.partition );
    s.result[ "holds" ] = report.holds;
    if ( report.witness )
    {
        s.line( "witness", report.witness->row() );
        json row = json::array();
        for ( auto k : report.witness->scope() )
            row.push_back( report.witness->symbol( k ) );
        s.result[ "witness" ] = std::move( row );
    }
    else
        s.result[ "witness" ] = nullptr;
}

inline void run_finest( Session& s, const CliConfig& c )
{
    if ( c.models_path.has_value() == c.theory_path.has_value() )
        throw Error{ ErrorKind::argument, "finest needs exactly one of -m/--models and -t/--theory" };
    auto x = c.models_path ? s.models() : models_of( s.theory(), c.max_variables );
    auto finest = finest_factorization( x );
    s.line( "partition", format_partition( *x.space(), finest ) );
    s.result[ "partition" ] = format_partition( *x.space(), finest );
    if ( c.oracle )
        cross_check( s, x, finest, c.oracle_bound );
}

inline void run_split( Session& s, const CliConfig& c )
{
    auto t = s.theory();
    auto split = split_theory( t, c.max_variables );
    const auto& space = *split.space;
    s.line( "partition", format_partition( space, split.partition ) );
    s.result[ "partition" ] = format_partition( space, split.partition );
    if ( c.oracle )
        cross_check( s, models_of( t, c.max_variables ), split.partition, c.oracle_bound );

    json blocks = json::array();
    for ( std::size_t i = 0; i < split.components.size(); ++i )
    {
        auto block = format_partition( space, Partition{ { split.partition.blocks()[ i ] } } );
        auto formula = format_formula( split.component_formulas[ i ] );
        s.line( "block", block );
        s.line( "formula", formula );
        s.line( "members", format_rows_inline( split.components[ i ] ) );
        blocks.push_back( { { "block", block }, { "formula", formula }, { "members", rows_json( split.components[ i ] ) } } );
    }
    s.result[ "blocks" ] = std::move( blocks );
}

inline void run_revise( Session& s, const CliConfig& c )
{
    auto x = s.models();
    if ( c.formula_text.has_value() == c.psi_models_path.has_value() )
        throw Error{ ErrorKind::argument, "revise needs exactly one of -f/--formula and --psi-models" };

    RevisionOutcome outcome = [ & ] {
        if ( c.formula_text )
        {
            s.absorb( "--formula", *c.formula_text );
            auto psi = s.parse_input( "--formula", *c.formula_text, []( const std::string& t ) { return parse_formula( t ); } );
            return revise( x, psi, c.max_variables );
        }
        auto psi = s.model_set( *c.psi_models_path );
        if ( *psi.space() != *x.space() )
            throw Error{ ErrorKind::scope, *c.psi_models_path + ": coordinates or domains differ from the prior's" };
        return revise( x, ModelSet{ x.space(), x.scope(), { psi.codes().begin(), psi.codes().end() } } );
    }();

    s.line( "coordinates", joined_names( outcome.revised ) );
    s.line( "distance", std::to_string( outcome.distance ) );
    s.line( "revised", format_rows_inline( outcome.revised ) );
    s.result[ "coordinates" ] = x.space()->names( x.scope() );
    s.result[ "distance" ] = outcome.distance;
    s.result[ "revised" ] = rows_json( outcome.revised );
}

inline void run_recode_search( Session& s, const CliConfig& c )
{
    auto x = s.models();
    auto witness = exists_factorable_recoding( x, c.max_product );
    if ( !witness )
    {
        s.plain = "none\n";
        s.result[ "witness" ] = nullptr;
        return;
    }
    auto partition = witness->scope().empty() ? Partition{} : finest_factorization( *witness );
    s.line( "coordinates", joined_names( *witness ) );
    s.line( "witness", format_rows_inline( *witness ) );
    s.line( "partition", format_partition( *witness->space(), partition ) );
    s.result[ "coordinates" ] = x.space()->names( x.scope() );
    s.result[ "witness" ] = rows_json( *witness );
    s.result[ "partition" ] = format_partition( *witness->space(), partition );
}

inline void run_recode_apply( Session& s, const CliConfig& c )
{
    auto x = s.models();
    const auto& path = Session::require( c.recoding_path, "-r/--recoding" );
    auto text = s.read( path );
    auto h = s.parse_input( path, text, [ & ]( const std::string& t ) {
        auto defs = parse_recoding_definitions( t );
        return recoding_from_definitions( x.space(), defs );
    } );
    auto image = apply_recoding( x, h );
    s.plain = format_model_set( image );
    s.result = model_set_json( image );
}

} // namespace detail

inline int run( const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err )
{
    using detail::json;
    const auto started = std::chrono::steady_clock::now();
    detail::Session session{ config, in };
    int status = 0;
    std::optional< json > error;

    try
    {
        switch ( config.command )
        {
        case Command::models: detail::run_models( session, config ); break;
        case Command::check: detail::run_check( session, config ); break;
        case Command::finest: detail::run_finest( session, config ); break;
        case Command::split: detail::run_split( session, config ); break;
        case Command::revise: detail::run_revise( session, config ); break;
        case Command::recode_search: detail::run_recode_search( session, config ); break;
        case Command::recode_apply: detail::run_recode_apply( session, config ); break;
        }
    }
    catch ( const Error& e )
    {
        status = e.is_resource() ? 2 : 1;
        err << "semsplit " << command_name( config.command ) << ": " << e.what() << "\n";
        error = json{ { "kind", to_string( e.kind() ) }, { "message", detail::Session::strip_kind( e ) } };
    }
    catch ( const std::bad_alloc& )
    {
        status = 2;
        err << "semsplit " << command_name( config.command ) << ": resource error: out of memory\n";
        error = json{ { "kind", "resource error" }, { "message", "out of memory" } };
    }

    if ( config.output == OutputMode::plain )
    {
        if ( status == 0 )
            out << session.plain;
        return status;
    }

    const auto elapsed = std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - started ).count();
    json record{ { "command", command_name( config.command ) }, { "inputs_digest", session.digest() } };
    if ( error )
        record[ "error" ] = std::move( *error );
    else
        record[ "result" ] = std::move( session.result );
    record[ "exit_status" ] = status;
    record[ "timing" ] = { { "elapsed_ms", elapsed } };
    out << record.dump() << "\n";
    return status;
}

} // namespace semsplit::cli
