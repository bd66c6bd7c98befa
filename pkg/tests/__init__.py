"""
Testes do projeto.

Execute a partir da raiz do repositório com:

    python -m unittest discover -s tests
"""
