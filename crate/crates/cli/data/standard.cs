# the standard specification plus one explicit constant
standard
k1 := p -> q -> p
