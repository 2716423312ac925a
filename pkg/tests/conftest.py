from __future__ import annotations

from tdkit import SymbolTable, TokenString


def ts(text: str, table: SymbolTable | None = None) -> TokenString:
    """Token string from space-separated names over a fresh (or given) table."""
    return TokenString.from_text(table if table is not None else SymbolTable(), text)


def pair(source_text: str, target_text: str) -> tuple[TokenString, TokenString]:
    """Source/target strings sharing one table."""
    table = SymbolTable()
    return ts(source_text, table), ts(target_text, table)


def from_tokens(tokens, alphabet_size: int = 8) -> TokenString:
    """Wrap raw small-int token tuples (as the oracles use) in a TokenString."""
    table = SymbolTable(f"t{i}" for i in range(alphabet_size))
    return TokenString(table, tuple(tokens))


def shared_from_tokens(*token_tuples, alphabet_size: int = 8):
    table = SymbolTable(f"t{i}" for i in range(alphabet_size))
    return [TokenString(table, tuple(t)) for t in token_tuples]
