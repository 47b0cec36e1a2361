import os
import json
import hashlib
import sqlite3
import logging
from typing import Any, Dict, List, Optional, Tuple

DEFAULT_CACHE_DB = os.path.join(".dgd_cache", "results.db")


class ResultCache:
    """
    SQLite store for computed D(G) results.
    Entries are keyed by group table hash, command name and a hash of the run settings.
    """

    def __init__(self, db_path: str = DEFAULT_CACHE_DB):
        """
        Initialize the result cache.

        Args:
            db_path: Path to SQLite database file; its directory is created if missing
        """
        self.logger = logging.getLogger(__name__)
        self.db_path = db_path

        directory = os.path.dirname(db_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        self._init_database()

        self.logger.info(f"ResultCache initialized with database: {db_path}")

    def _init_database(self):
        """Create the results table and its lookup index"""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS result_cache (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    group_key TEXT NOT NULL,
                    group_name TEXT,
                    command TEXT NOT NULL,
                    settings_hash TEXT NOT NULL,
                    payload TEXT NOT NULL,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    last_used_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    use_count INTEGER DEFAULT 1,
                    UNIQUE(group_key, command, settings_hash)
                )
            """)

            cursor.execute("""
                CREATE INDEX IF NOT EXISTS idx_group_command
                ON result_cache(group_key, command, settings_hash)
            """)

            conn.commit()
            self.logger.debug("Database initialized successfully")

    @staticmethod
    def compute_settings_hash(settings: Dict[str, Any]) -> str:
        """
        Hash the settings that influence a result.

        Args:
            settings: JSON-serializable settings (tolerance, seed, limits, ...)

        Returns:
            SHA256 hex digest of the canonical JSON form
        """
        settings_str = json.dumps(settings, sort_keys=True, ensure_ascii=False, default=str)
        return hashlib.sha256(settings_str.encode('utf-8')).hexdigest()

    def get_cached_result(self, group_key: str, command: str, settings: Dict[str, Any]) -> Optional[Dict[str, Any]]:
        """
        Retrieve a cached payload if available.

        Args:
            group_key: FiniteGroup.key of the group
            command: command name such as "fusion"
            settings: run settings the result depends on

        Returns:
            Decoded payload or None if not found
        """
        try:
            settings_hash = self.compute_settings_hash(settings)

            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()

                cursor.execute("""
                    SELECT payload, use_count
                    FROM result_cache
                    WHERE group_key = ? AND command = ? AND settings_hash = ?
                """, (group_key, command, settings_hash))

                result = cursor.fetchone()

                if result:
                    payload, use_count = result

                    cursor.execute("""
                        UPDATE result_cache
                        SET last_used_at = CURRENT_TIMESTAMP, use_count = use_count + 1
                        WHERE group_key = ? AND command = ? AND settings_hash = ?
                    """, (group_key, command, settings_hash))

                    conn.commit()

                    self.logger.info(f"Cache HIT for {command} on {group_key[:12]} (used {use_count + 1} times)")
                    return json.loads(payload)
                else:
                    self.logger.info(f"Cache MISS for {command} on {group_key[:12]}")
                    return None

        except (sqlite3.Error, json.JSONDecodeError) as e:
            self.logger.error(f"Error retrieving cached result: {str(e)}")
            return None

    def store_result(self, group_key: str, command: str, settings: Dict[str, Any],
                     payload: Dict[str, Any], group_name: Optional[str] = None) -> bool:
        """
        Store a payload in the cache.

        Args:
            group_key: FiniteGroup.key of the group
            command: command name
            settings: run settings the result depends on
            payload: JSON-serializable result
            group_name: display name kept for the statistics listing

        Returns:
            True if stored successfully, False otherwise
        """
        try:
            settings_hash = self.compute_settings_hash(settings)
            encoded = json.dumps(payload, sort_keys=True)

            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()

                cursor.execute("""
                    INSERT OR REPLACE INTO result_cache
                    (group_key, group_name, command, settings_hash, payload)
                    VALUES (?, ?, ?, ?, ?)
                """, (group_key, group_name, command, settings_hash, encoded))

                conn.commit()

                self.logger.info(f"Result cached for {command} on {group_name or group_key[:12]}")
                return True

        except (sqlite3.Error, TypeError, ValueError) as e:
            self.logger.error(f"Error storing result in cache: {str(e)}")
            return False

    @staticmethod
    def _filter(group_key: Optional[str], command: Optional[str]) -> Tuple[str, List[str]]:
        clauses, params = [], []
        if group_key:
            clauses.append("group_key = ?")
            params.append(group_key)
        if command:
            clauses.append("command = ?")
            params.append(command)
        return (" WHERE " + " AND ".join(clauses)) if clauses else "", params

    def clear_cache(self, group_key: Optional[str] = None, command: Optional[str] = None) -> int:
        """
        Remove cached results, all of them or those of one group and/or command.

        Returns:
            Number of results removed, -1 on a database error
        """
        where, params = self._filter(group_key, command)
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.execute("DELETE FROM result_cache" + where, params)
                removed = cursor.rowcount
                conn.commit()
            scope = f" for {command or 'all commands'} on {group_key[:12] if group_key else 'all groups'}"
            self.logger.info(f"Cleared {removed} cached results{scope}")
            return removed
        except sqlite3.Error as e:
            self.logger.error(f"Error clearing cache: {str(e)}")
            return -1

    def get_cache_stats(self) -> Dict[str, Any]:
        """
        Per-command breakdown of the stored results.

        Returns:
            Totals, distinct groups, a per-command entry/use table and the most reused results
        """
        try:
            with sqlite3.connect(self.db_path) as conn:
                total_entries, total_uses, groups = conn.execute("""
                    SELECT COUNT(*), COALESCE(SUM(use_count), 0), COUNT(DISTINCT group_key)
                    FROM result_cache
                """).fetchone()
                per_command = conn.execute("""
                    SELECT command, COUNT(*), SUM(use_count)
                    FROM result_cache GROUP BY command ORDER BY command
                """).fetchall()
                top_results = conn.execute("""
                    SELECT group_name, command, use_count, last_used_at
                    FROM result_cache ORDER BY use_count DESC, last_used_at DESC LIMIT 5
                """).fetchall()
        except sqlite3.Error as e:
            self.logger.error(f"Error getting cache stats: {str(e)}")
            return {}

        return {
            'database': self.db_path,
            'total_entries': total_entries,
            'total_uses': total_uses,
            'groups': groups,
            'reuse_ratio': round(total_uses / total_entries, 2) if total_entries else 0,
            'commands': {command: {'entries': entries, 'uses': uses} for command, entries, uses in per_command},
            'top_results': [
                {'group': name, 'command': command, 'uses': uses, 'last_used': last_used}
                for name, command, uses, last_used in top_results
            ],
        }

    def prune_stale_results(self, max_age_days: float) -> int:
        """
        Drop results nobody has read for more than max_age_days.

        Returns:
            Number of results removed, -1 on a database error
        """
        if max_age_days < 0:
            raise ValueError(f"max_age_days must be non-negative, got {max_age_days}")
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.execute(
                    "DELETE FROM result_cache WHERE last_used_at < datetime('now', ?)",
                    (f"-{max_age_days} days",))
                removed = cursor.rowcount
                conn.commit()
        except sqlite3.Error as e:
            self.logger.error(f"Error pruning stale results: {str(e)}")
            return -1
        if removed:
            self.logger.info(f"Pruned {removed} results unused for {max_age_days} days")
        return removed
