"""
Hierarquia de exceções do pacote glauber.

As exceções herdam também dos tipos padrão (ValueError, RuntimeError) para
que chamadores que já tratam esses tipos continuem funcionando.
"""


class ErroGlauber(Exception):
    """Raiz das exceções do pacote."""


class ErroEntrada(ErroGlauber, ValueError):
    """
    Entrada inválida: vértice ou cor fora do intervalo, rotulações que não
    diferem em exatamente um vértice, arquivos malformados ou parâmetros de
    configuração inconsistentes.
    """


class ErroGeracaoGrafo(ErroGlauber, RuntimeError):
    """Falha do gerador de grafos após esgotar o orçamento de tentativas."""

    def __init__(self, mensagem: str, orcamento: int):
        super().__init__(f"{mensagem} (orçamento de {orcamento} tentativas esgotado)")
        self.orcamento = orcamento


class ErroContrato(ErroGlauber, RuntimeError):
    """
    Violação de contrato interno: transformação aplicada fora das condições
    em que está definida, ou asserção de dominação falhando durante o
    acoplamento.
    """
