"""Pluggable content modules.

A module turns one kind of data into reportlab flowables:

    class Caption(Module):
        def render(self, data, styles, pagesize, **kwargs):
            return [Paragraph(data, styles['GridCaption'])]

    doc.register_module('caption', Caption())
    doc.add('caption', 'k = 3')
"""

from abc import ABC, abstractmethod


class Module(ABC):
    """Base class for content modules."""

    @abstractmethod
    def render(self, data, styles, pagesize, **kwargs):
        """Return a list of flowables for ``data``; ``pagesize`` is (width, height) in points."""


class ModuleRegistry:
    """Name to module lookup for a document."""

    def __init__(self):
        self._modules = {}

    def __contains__(self, name):
        return name in self._modules

    def register(self, name, module):
        if not isinstance(module, Module):
            raise TypeError(f"expected a Module instance for '{name}', got {type(module).__name__}")
        self._modules[name] = module

    def get(self, name):
        try:
            return self._modules[name]
        except KeyError:
            known = ', '.join(sorted(self._modules))
            raise KeyError(f"no module named '{name}' (registered: {known})") from None

    def names(self):
        return sorted(self._modules)
