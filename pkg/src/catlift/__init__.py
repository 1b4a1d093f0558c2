"""Delta lenses, twisted coreflections and their lifting structure on finite categories."""

__version__ = "0.1.0"
