"""Equivariant real structures on horospherical varieties.

Modules, bottom-up: ``lattice`` (exact integer lattices and involutions),
``rootsys`` (Cartan data, centers, diagram automorphisms), ``realform``
(real forms and their Tits classes), ``cohomology``, ``horospherical``
(existence and counting on G/H), ``fans`` (extension to embeddings),
``picard1`` and the ``cli``.
"""

__version__ = "0.1.0"
