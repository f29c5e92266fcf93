#pragma once

// Model-set text format.
//
//   # comment
//   p q r            <- coordinate names; "color{red,green}" declares a domain
//   0 1 1            <- one member per line, symbols in coordinate order
//
// Without a declared domain, a coordinate whose symbols are all 0/1 gets the
// domain {0, 1}; otherwise its domain is the sorted set of symbols it uses.

#include "semsplit/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace semsplit
{

namespace detail
{

struct Word
{
    std::string text;
    std::size_t column;
};

inline std::vector< Word > split_words( std::string_view line )
{
    std::vector< Word > out;
    std::size_t i = 0;
    while ( i < line.size() )
    {
        while ( i < line.size() && std::isspace( static_cast< unsigned char >( line[ i ] ) ) )
            ++i;
        if ( i == line.size() )
            break;
        auto start = i;
        while ( i < line.size() && !std::isspace( static_cast< unsigned char >( line[ i ] ) ) )
            ++i;
        out.push_back( { std::string{ line.substr( start, i - start ) }, start } );
    }
    return out;
}

inline std::vector< std::string > inferred_domain( const std::set< std::string >& used )
{
    if ( std::all_of( used.begin(), used.end(), []( const std::string& s ) { return s == "0" || s == "1"; } ) )
        return { "0", "1" };
    return { used.begin(), used.end() };
}

} // namespace detail

inline ModelSet parse_model_set( std::string_view text )
{
    std::optional< std::vector< detail::Word > > header;
    std::vector< std::optional< std::vector< std::string > > > declared;
    std::vector< std::pair< std::size_t, std::vector< detail::Word > > > rows;
    std::size_t line_no = 0;

    while ( !text.empty() )
    {
        auto nl = text.find( '\n' );
        auto line = text.substr( 0, nl );
        text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
        ++line_no;

        auto words = detail::split_words( line );
        if ( words.empty() || words.front().text.front() == '#' )
            continue;

        if ( !header )
        {
            for ( auto& w : words )
            {
                auto brace = w.text.find( '{' );
                if ( brace == std::string::npos )
                {
                    declared.emplace_back();
                    continue;
                }
                if ( w.text.back() != '}' || brace == 0 )
                    throw ParseError{ "malformed domain declaration '" + w.text + "'", w.column, line_no };
                std::vector< std::string > domain;
                std::string body = w.text.substr( brace + 1, w.text.size() - brace - 2 );
                std::size_t start = 0;
                while ( true )
                {
                    auto comma = body.find( ',', start );
                    auto symbol = body.substr( start, comma == std::string::npos ? std::string::npos : comma - start );
                    if ( symbol.empty() )
                        throw ParseError{ "empty value in domain declaration '" + w.text + "'", w.column, line_no };
                    domain.push_back( symbol );
                    if ( comma == std::string::npos )
                        break;
                    start = comma + 1;
                }
                declared.emplace_back( std::move( domain ) );
                w.text.resize( brace );
            }
            header = std::move( words );
            continue;
        }

        if ( words.size() != header->size() )
            throw ParseError{ "row has " + std::to_string( words.size() ) + " values, expected " + std::to_string( header->size() ),
                              words.size() > header->size() ? words[ header->size() ].column : line.size(), line_no };
        rows.emplace_back( line_no, std::move( words ) );
    }

    if ( !header )
        throw ParseError{ "missing header line with coordinate names", 0, line_no == 0 ? 1 : line_no };

    std::vector< Coordinate > coordinates;
    for ( std::size_t k = 0; k < header->size(); ++k )
    {
        std::vector< std::string > domain;
        if ( declared[ k ] )
            domain = *declared[ k ];
        else
        {
            std::set< std::string > used;
            for ( const auto& [ line, words ] : rows )
                used.insert( words[ k ].text );
            domain = detail::inferred_domain( used );
        }
        coordinates.push_back( { ( *header )[ k ].text, std::move( domain ) } );
    }

    SpacePtr space;
    try
    {
        space = ProductSpace::make( std::move( coordinates ) );
    }
    catch ( const Error& e )
    {
        throw ParseError{ e.what(), 0, 1 };
    }

    const auto scope = space->all();
    detail::ScopeCodec codec{ *space, scope };
    std::vector< Code > codes;
    for ( const auto& [ line, words ] : rows )
    {
        std::vector< ValueIndex > digits;
        for ( std::size_t k = 0; k < words.size(); ++k )
        {
            auto v = space->find_value( k, words[ k ].text );
            if ( !v )
                throw ParseError{ "value '" + words[ k ].text + "' is not in the domain of '" + ( *space )[ k ].name + "'",
                                  words[ k ].column, line };
            digits.push_back( *v );
        }
        codes.push_back( codec.encode( digits ) );
    }
    return ModelSet{ space, scope, std::move( codes ) };
}

// Inverse of parse_model_set for full-scope sets. Domains are annotated only
// where inference from the rows would not reproduce them.
inline std::string format_model_set( const ModelSet& x )
{
    const auto& space = *x.space();
    const auto members = x.members();
    std::string out;
    bool first = true;
    for ( auto k : x.scope() )
    {
        if ( !first )
            out += ' ';
        first = false;
        out += space[ k ].name;

        std::set< std::string > used;
        for ( const auto& m : members )
            used.insert( m.symbol( k ) );
        if ( detail::inferred_domain( used ) != space[ k ].domain )
        {
            out += '{';
            for ( std::size_t v = 0; v < space[ k ].domain.size(); ++v )
                out += ( v ? "," : "" ) + space[ k ].domain[ v ];
            out += '}';
        }
    }
    out += '\n';
    for ( const auto& m : members )
        out += m.row() + '\n';
    return out;
}

// Members as "0 1; 1 1".
inline std::string format_rows_inline( const ModelSet& x )
{
    std::string out;
    for ( const auto& m : x.members() )
    {
        if ( !out.empty() )
            out += "; ";
        out += m.row();
    }
    return out;
}

} // namespace semsplit
