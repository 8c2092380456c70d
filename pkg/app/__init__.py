import logging

from flask import Flask

from config import Config


def setup_logging(level='WARNING', fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s'):
    """Send log records to stderr; stdout is reserved for command output."""
    logging.basicConfig(level=level, format=fmt)
    logging.getLogger().setLevel(level)


def create_app(config_class=Config):
    app = Flask(__name__)
    app.config.from_object(config_class)

    setup_logging(app.config['LOG_LEVEL'], app.config['LOG_FORMAT'])

    # Register command blueprints
    from app.commands.embeddings import bp as embeddings_bp

    app.register_blueprint(embeddings_bp)

    return app
